//! Buchberger's algorithm with the normal selection strategy, reduced-basis
//! canonicalization, and block-order elimination.
//!
//! Design points:
//! * Pairs are selected by minimal lcm degree (ties by index), or strictly
//!   first-come under [`SelectionStrategy::FirstCome`]; the reduced basis is
//!   unique either way, which the test suite exploits as a determinism check.
//! * Both classical pair-skipping criteria run at pop time: coprime leading
//!   terms, and the chain criterion against pairs already treated.
//! * Every reduction honors [`Caps`]; blowups abort with a
//!   [`crate::error::ResourceDiag`] snapshot instead of churning forever.
//! * A reduced basis is monic, inter-reduced, and sorted ascending by leading
//!   monomial, so equal ideals yield byte-identical bases.

use std::collections::HashSet;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, ResourceDiag, Result};
use crate::polyring::{
    parse_polynomial, require_same_registry, Monomial, MonomialOrder, Polynomial, VarRegistry,
};

/// Resource caps for basis construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Maximum number of basis elements, pre-reduction.
    pub max_basis_len: usize,
    /// Maximum term count of any intermediate polynomial.
    pub max_terms: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_basis_len: 10_000,
            max_terms: 100_000,
        }
    }
}

impl Caps {
    /// Parse `"BASIS,TERMS"` (as accepted in the `RIGLAB_CAPS` environment
    /// variable).
    pub fn parse(s: &str) -> Result<Caps> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 2 {
            return Err(Error::Parse(format!(
                "caps must be \"max_basis,max_terms\", got {s:?}"
            )));
        }
        let max_basis_len = parts[0]
            .parse::<usize>()
            .map_err(|e| Error::Parse(format!("bad basis cap {:?}: {e}", parts[0])))?;
        let max_terms = parts[1]
            .parse::<usize>()
            .map_err(|e| Error::Parse(format!("bad term cap {:?}: {e}", parts[1])))?;
        if max_basis_len == 0 || max_terms == 0 {
            return Err(Error::Parse("caps must be positive".into()));
        }
        Ok(Caps {
            max_basis_len,
            max_terms,
        })
    }
}

/// S-pair selection order. The reduced result is strategy-independent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SelectionStrategy {
    /// Normal strategy: minimal lcm total degree, ties by pair index.
    #[default]
    MinLcmDegree,
    /// Strict queue order, used to cross-check determinism.
    FirstCome,
}

/// A finitely generated ideal: nonzero generators over one registry. The
/// zero ideal is the empty generator list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ideal {
    registry: Arc<VarRegistry>,
    generators: Vec<Polynomial>,
}

impl Ideal {
    /// Zero generators are dropped; registry mismatches are errors.
    pub fn new(registry: Arc<VarRegistry>, generators: Vec<Polynomial>) -> Result<Ideal> {
        let mut gens = Vec::with_capacity(generators.len());
        for g in generators {
            require_same_registry(&registry, g.registry())?;
            if !g.is_zero() {
                gens.push(g);
            }
        }
        Ok(Ideal {
            registry,
            generators: gens,
        })
    }

    pub fn registry(&self) -> &Arc<VarRegistry> {
        &self.registry
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn to_json(&self) -> IdealJson {
        IdealJson {
            vars: self.registry.names().to_vec(),
            generators: self.generators.iter().map(|g| g.to_string()).collect(),
        }
    }

    pub fn from_json(j: &IdealJson) -> Result<Ideal> {
        let registry = VarRegistry::new(j.vars.iter().cloned())?;
        let gens = j
            .generators
            .iter()
            .map(|s| parse_polynomial(&registry, MonomialOrder::Lex, s))
            .collect::<Result<Vec<_>>>()?;
        Ideal::new(registry, gens)
    }
}

/// Wire form of an ideal: a variable list and generator texts.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct IdealJson {
    pub vars: Vec<String>,
    pub generators: Vec<String>,
}

/// A reduced Groebner basis: monic, inter-reduced, sorted ascending by
/// leading monomial under `order`. Unique per (ideal, order).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroebnerBasis {
    registry: Arc<VarRegistry>,
    basis: Vec<Polynomial>,
    order: MonomialOrder,
}

impl GroebnerBasis {
    pub fn registry(&self) -> &Arc<VarRegistry> {
        &self.registry
    }

    pub fn basis(&self) -> &[Polynomial] {
        &self.basis
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn as_ideal(&self) -> Ideal {
        Ideal {
            registry: Arc::clone(&self.registry),
            generators: self.basis.clone(),
        }
    }

    /// `true` iff the basis is `{1}`, i.e. the ideal is the whole ring.
    pub fn contains_one(&self) -> bool {
        self.basis.iter().any(|g| g.is_constant() && !g.is_zero())
    }

    /// Full normal form of `f` modulo the basis: no remainder term is
    /// divisible by any basis leading monomial. Zero iff `f` is a member.
    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        require_same_registry(&self.registry, f.registry())?;
        reduce_capped(
            &f.with_order(self.order),
            &self.basis,
            None,
            self.order,
            Caps {
                // Normal forms terminate without caps; a generous term cap
                // still guards against pathological inputs.
                max_basis_len: usize::MAX,
                max_terms: usize::MAX,
            },
            "normal_form",
            0,
        )
    }
}

fn resource_err(
    stage: &str,
    basis_len: usize,
    pending_pairs: usize,
    term_count: usize,
    caps: Caps,
) -> Error {
    Error::ResourceExceeded(ResourceDiag {
        stage: stage.to_string(),
        basis_len,
        pending_pairs,
        term_count,
        max_basis_len: caps.max_basis_len,
        max_terms: caps.max_terms,
    })
}

/// Full reduction of `f` by `divisors` (optionally skipping one index),
/// keeping only the remainder. Aborts via `caps.max_terms`.
fn reduce_capped(
    f: &Polynomial,
    divisors: &[Polynomial],
    skip: Option<usize>,
    order: MonomialOrder,
    caps: Caps,
    stage: &str,
    pending_pairs: usize,
) -> Result<Polynomial> {
    let registry = Arc::clone(f.registry());
    let mut p = f.clone();
    let mut rem: Vec<(crate::polyring::Rational, Monomial)> = Vec::new();
    'outer: while !p.is_zero() {
        let width = p.n_terms() + rem.len();
        if width > caps.max_terms {
            return Err(resource_err(stage, divisors.len(), pending_pairs, width, caps));
        }
        let lc = p.leading_coeff().expect("nonzero").clone();
        let lm = p.leading_monomial().expect("nonzero").clone();
        for (gi, g) in divisors.iter().enumerate() {
            if skip == Some(gi) {
                continue;
            }
            let glm = g.leading_monomial().expect("basis elements are nonzero");
            if let Some(q) = glm.checked_div(&lm) {
                let c = &lc / g.leading_coeff().expect("nonzero");
                p = p.checked_sub(&g.mul_term(&c, &q))?;
                continue 'outer;
            }
        }
        // Leading terms strictly decrease, so `rem` stays sorted descending.
        p.pop_leading_term();
        rem.push((lc, lm));
    }
    Polynomial::from_terms(registry, order, rem)
}

/// S-polynomial of `f` and `g` under `order`.
pub fn s_polynomial(f: &Polynomial, g: &Polynomial, order: MonomialOrder) -> Result<Polynomial> {
    require_same_registry(f.registry(), g.registry())?;
    let f = f.with_order(order);
    let g = g.with_order(order);
    let (fl, gl) = match (f.leading_monomial(), g.leading_monomial()) {
        (Some(a), Some(b)) => (a.clone(), b.clone()),
        _ => return Err(Error::Argument("s_polynomial of the zero polynomial".into())),
    };
    let lcm = fl.lcm(&gl);
    let uf = fl.checked_div(&lcm).expect("lcm is divisible");
    let ug = gl.checked_div(&lcm).expect("lcm is divisible");
    let cf = crate::polyring::Rational::from_integer(1.into())
        / f.leading_coeff().expect("nonzero");
    let cg = crate::polyring::Rational::from_integer(1.into())
        / g.leading_coeff().expect("nonzero");
    f.mul_term(&cf, &uf).checked_sub(&g.mul_term(&cg, &ug))
}

struct Pair {
    i: usize,
    j: usize,
    lcm_deg: u32,
}

/// Reduced Groebner basis with default caps and the normal strategy.
pub fn buchberger(ideal: &Ideal, order: MonomialOrder) -> Result<GroebnerBasis> {
    buchberger_with(ideal, order, Caps::default(), SelectionStrategy::default())
}

pub fn buchberger_with(
    ideal: &Ideal,
    order: MonomialOrder,
    caps: Caps,
    strategy: SelectionStrategy,
) -> Result<GroebnerBasis> {
    let registry = Arc::clone(ideal.registry());
    let mut basis: Vec<Polynomial> = ideal
        .generators
        .iter()
        .map(|g| g.with_order(order).monic())
        .collect();

    let mut queue: Vec<Pair> = Vec::new();
    let mut queued: HashSet<(usize, usize)> = HashSet::new();
    let push_pairs = |basis: &[Polynomial],
                          queue: &mut Vec<Pair>,
                          queued: &mut HashSet<(usize, usize)>,
                          j: usize| {
        let lj = basis[j].leading_monomial().expect("nonzero").clone();
        for (i, g) in basis.iter().enumerate().take(j) {
            let li = g.leading_monomial().expect("nonzero");
            queue.push(Pair {
                i,
                j,
                lcm_deg: li.lcm(&lj).degree(),
            });
            queued.insert((i, j));
        }
    };
    for j in 0..basis.len() {
        push_pairs(&basis, &mut queue, &mut queued, j);
    }

    while !queue.is_empty() {
        let idx = match strategy {
            SelectionStrategy::MinLcmDegree => queue
                .iter()
                .enumerate()
                .min_by_key(|(_, p)| (p.lcm_deg, p.i, p.j))
                .map(|(k, _)| k)
                .expect("queue nonempty"),
            SelectionStrategy::FirstCome => 0,
        };
        let pair = queue.remove(idx);
        queued.remove(&(pair.i, pair.j));

        let li = basis[pair.i].leading_monomial().expect("nonzero");
        let lj = basis[pair.j].leading_monomial().expect("nonzero");
        // Coprime leading monomials: the S-polynomial reduces to zero.
        if li.coprime(lj) {
            continue;
        }
        // Chain criterion: some k whose leading monomial divides lcm(i, j),
        // with both pairs (i, k) and (j, k) already treated.
        let lcm = li.lcm(lj);
        let chain = basis.iter().enumerate().any(|(k, g)| {
            k != pair.i
                && k != pair.j
                && g.leading_monomial().expect("nonzero").divides(&lcm)
                && !queued.contains(&key(pair.i, k))
                && !queued.contains(&key(pair.j, k))
        });
        if chain {
            continue;
        }

        let s = s_polynomial(&basis[pair.i], &basis[pair.j], order)?;
        let rem = reduce_capped(&s, &basis, None, order, caps, "buchberger", queue.len())?;
        if rem.is_zero() {
            continue;
        }
        if rem.is_constant() {
            // 1 is a member: the reduced basis is {1}, no need to continue.
            return Ok(GroebnerBasis {
                basis: vec![Polynomial::constant(
                    Arc::clone(&registry),
                    order,
                    crate::polyring::Rational::from_integer(1.into()),
                )],
                registry,
                order,
            });
        }
        basis.push(rem.monic());
        if basis.len() > caps.max_basis_len {
            return Err(resource_err(
                "buchberger",
                basis.len(),
                queue.len(),
                0,
                caps,
            ));
        }
        push_pairs(&basis, &mut queue, &mut queued, basis.len() - 1);
    }

    let basis = reduce_basis(basis, order, caps)?;
    Ok(GroebnerBasis {
        registry,
        basis,
        order,
    })
}

fn key(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

/// Minimalize (drop elements whose leading monomial another divides), then
/// inter-reduce tails. Divisibility implies order-dominance, so one ascending
/// sweep finds the minimal set, and one reduction pass is a fixpoint.
fn reduce_basis(
    mut basis: Vec<Polynomial>,
    order: MonomialOrder,
    caps: Caps,
) -> Result<Vec<Polynomial>> {
    basis.retain(|g| !g.is_zero());
    basis.sort_by(|a, b| {
        order.compare(
            a.leading_monomial().expect("nonzero"),
            b.leading_monomial().expect("nonzero"),
        )
    });
    let mut minimal: Vec<Polynomial> = Vec::new();
    'next: for g in basis {
        let gl = g.leading_monomial().expect("nonzero").clone();
        for h in &minimal {
            if h.leading_monomial().expect("nonzero").divides(&gl) {
                continue 'next;
            }
        }
        minimal.push(g);
    }
    let mut out = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let r = reduce_capped(
            &minimal[i],
            &minimal,
            Some(i),
            order,
            caps,
            "interreduce",
            0,
        )?;
        debug_assert!(!r.is_zero(), "minimal element reduced to zero");
        out.push(r.monic());
    }
    Ok(out)
}

/// Check that every S-polynomial of the basis reduces to zero against it.
/// Used by tests as an independent certificate that a basis is a Groebner
/// basis, separate from how it was constructed.
pub fn spolys_reduce_to_zero(gb: &GroebnerBasis) -> Result<bool> {
    for i in 0..gb.basis.len() {
        for j in (i + 1)..gb.basis.len() {
            let s = s_polynomial(&gb.basis[i], &gb.basis[j], gb.order)?;
            if !gb.normal_form(&s)?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Elimination ideal: drop the named variables from `ideal` and return the
/// intersection with the remaining polynomial ring, presented by the reduced
/// lex Groebner basis it inherits.
///
/// The dropped variables are moved into the leading block of a
/// [`MonomialOrder::Block`] order; basis elements free of that block are
/// exactly a Groebner basis of the elimination ideal, and they remain
/// reduced under lex on the kept variables.
pub fn eliminate<I, S>(ideal: &Ideal, drop_vars: I) -> Result<Ideal>
where
    I: IntoIterator<Item = S>,
    S: AsRef<str>,
{
    eliminate_with(ideal, drop_vars, Caps::default())
}

pub fn eliminate_with<I, S>(ideal: &Ideal, drop_vars: I, caps: Caps) -> Result<Ideal>
where
    I: IntoIterator<Item = S>,
    S: AsRef<str>,
{
    let registry = ideal.registry();
    let mut drop: HashSet<String> = HashSet::new();
    for name in drop_vars {
        let name = name.as_ref();
        if registry.index_of(name).is_none() {
            return Err(Error::Argument(format!(
                "cannot eliminate unknown variable {name:?}"
            )));
        }
        drop.insert(name.to_string());
    }
    let (dropped, kept): (Vec<&String>, Vec<&String>) = registry
        .names()
        .iter()
        .partition(|n| drop.contains(n.as_str()));
    let split = dropped.len();
    let work_registry =
        VarRegistry::new(dropped.iter().chain(kept.iter()).map(|s| s.to_string()))?;
    let kept_registry = VarRegistry::new(kept.iter().map(|s| s.to_string()))?;

    let order = MonomialOrder::Block { split };
    let gens = ideal
        .generators
        .iter()
        .map(|g| g.remap(&work_registry, order))
        .collect::<Result<Vec<_>>>()?;
    let gb = buchberger_with(
        &Ideal::new(Arc::clone(&work_registry), gens)?,
        order,
        caps,
        SelectionStrategy::default(),
    )?;

    let mut kept_gens = Vec::new();
    for g in gb.basis() {
        let uses_dropped = g
            .terms()
            .iter()
            .any(|(_, m)| m.exps()[..split].iter().any(|&e| e > 0));
        if !uses_dropped {
            kept_gens.push(g.remap(&kept_registry, MonomialOrder::Lex)?);
        }
    }
    Ideal::new(kept_registry, kept_gens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn reg(names: &[&str]) -> Arc<VarRegistry> {
        VarRegistry::new(names.iter().copied()).unwrap()
    }

    fn p(registry: &Arc<VarRegistry>, s: &str) -> Polynomial {
        parse_polynomial(registry, MonomialOrder::Lex, s).unwrap()
    }

    fn ideal(registry: &Arc<VarRegistry>, gens: &[&str]) -> Ideal {
        Ideal::new(
            Arc::clone(registry),
            gens.iter().map(|s| p(registry, s)).collect(),
        )
        .unwrap()
    }

    #[test]
    fn worked_lex_basis() {
        let r = reg(&["x", "y"]);
        let gb = buchberger(&ideal(&r, &["x*y - 1", "y^2 - 1"]), MonomialOrder::Lex).unwrap();
        let texts: Vec<String> = gb.basis().iter().map(|g| g.to_string()).collect();
        assert_eq!(texts, vec!["y^2 - 1", "x - y"]);
        assert!(spolys_reduce_to_zero(&gb).unwrap());
    }

    #[test]
    fn worked_grevlex_basis() {
        // Twisted cubic: reduced grevlex basis is quadratic.
        let r = reg(&["x", "y", "z"]);
        let gb = buchberger(
            &ideal(&r, &["x^2 - y", "x^3 - z"]),
            MonomialOrder::GrevLex,
        )
        .unwrap();
        let texts: Vec<String> = gb.basis().iter().map(|g| g.to_string()).collect();
        assert_eq!(texts, vec!["y^2 - x*z", "x*y - z", "x^2 - y"]);
        assert!(spolys_reduce_to_zero(&gb).unwrap());
    }

    #[test]
    fn normal_form_examples() {
        let r = reg(&["x", "y"]);
        let gb = buchberger(&ideal(&r, &["x*y - 1", "y^2 - 1"]), MonomialOrder::Lex).unwrap();
        assert!(gb.normal_form(&p(&r, "x - y")).unwrap().is_zero());
        assert_eq!(gb.normal_form(&p(&r, "x^2")).unwrap(), p(&r, "1"));
        let one_gb = buchberger(&ideal(&r, &["x - 1"]), MonomialOrder::Lex).unwrap();
        assert_eq!(one_gb.normal_form(&p(&r, "x")).unwrap(), p(&r, "1"));
    }

    #[test]
    fn contains_one_matches_solvability() {
        let r = reg(&["x", "y"]);
        let gb = buchberger(&ideal(&r, &["x - 1", "x - 2"]), MonomialOrder::Lex).unwrap();
        assert!(gb.contains_one());
        assert_eq!(gb.basis().len(), 1);
        let gb = buchberger(&ideal(&r, &["x^2 + 1"]), MonomialOrder::Lex).unwrap();
        assert!(!gb.contains_one());
        // Ideals built to vanish at a known rational point are never trivial.
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..10 {
            let vx = rng.random_range(-5i64..=5);
            let vy = rng.random_range(-5i64..=5);
            let gens: Vec<Polynomial> = (0..3)
                .map(|_| {
                    let h = random_poly(&r, &mut rng);
                    let value = h
                        .evaluate(&[
                            crate::polyring::Rational::from_integer(vx.into()),
                            crate::polyring::Rational::from_integer(vy.into()),
                        ])
                        .unwrap();
                    h.checked_sub(&Polynomial::constant(
                        Arc::clone(&r),
                        MonomialOrder::Lex,
                        value,
                    ))
                    .unwrap()
                })
                .collect();
            let gb = buchberger(
                &Ideal::new(Arc::clone(&r), gens).unwrap(),
                MonomialOrder::Lex,
            )
            .unwrap();
            assert!(!gb.contains_one());
        }
    }

    fn random_poly(r: &Arc<VarRegistry>, rng: &mut StdRng) -> Polynomial {
        let n_terms = rng.random_range(1..=4);
        let terms = (0..n_terms)
            .map(|_| {
                let c = crate::polyring::Rational::from_integer(
                    rng.random_range(-6i64..=6).into(),
                );
                let exps: Vec<u32> = (0..r.len()).map(|_| rng.random_range(0..3)).collect();
                (c, Monomial::from_exps(exps))
            })
            .collect();
        Polynomial::from_terms(Arc::clone(r), MonomialOrder::Lex, terms).unwrap()
    }

    #[test]
    fn membership_of_random_combinations() {
        let r = reg(&["x", "y"]);
        let gens = ["x*y - 1", "y^2 - 1"];
        let i = ideal(&r, &gens);
        let gb = buchberger(&i, MonomialOrder::Lex).unwrap();
        let mut rng = StdRng::seed_from_u64(11);
        for _ in 0..20 {
            let mut f = Polynomial::zero(Arc::clone(&r), MonomialOrder::Lex);
            for g in i.generators() {
                let h = random_poly(&r, &mut rng);
                f = f.checked_add(&h.checked_mul(g).unwrap()).unwrap();
            }
            assert!(gb.normal_form(&f).unwrap().is_zero());
        }
    }

    #[test]
    fn strategies_agree_on_the_reduced_basis() {
        let r = reg(&["x", "y", "z"]);
        let cases: Vec<Vec<&str>> = vec![
            vec!["x^2 - y", "x^3 - z"],
            vec!["x*y - z", "y*z - x", "z*x - y"],
            vec!["x^2 + y^2 + z^2 - 1", "x - y*z"],
        ];
        for gens in cases {
            let i = ideal(&r, &gens);
            for order in [MonomialOrder::Lex, MonomialOrder::GrevLex] {
                let a = buchberger_with(
                    &i,
                    order,
                    Caps::default(),
                    SelectionStrategy::MinLcmDegree,
                )
                .unwrap();
                let b =
                    buchberger_with(&i, order, Caps::default(), SelectionStrategy::FirstCome)
                        .unwrap();
                assert_eq!(a.basis(), b.basis());
            }
        }
    }

    #[test]
    fn caps_trip_with_diagnostics() {
        let r = reg(&["x", "y", "z"]);
        let i = ideal(&r, &["x^2 - y", "x^3 - z"]);
        let tight = Caps {
            max_basis_len: 2,
            max_terms: 100,
        };
        match buchberger_with(&i, MonomialOrder::GrevLex, tight, SelectionStrategy::default()) {
            Err(Error::ResourceExceeded(d)) => {
                assert_eq!(d.stage, "buchberger");
                assert!(d.basis_len > 2);
                assert_eq!(d.max_basis_len, 2);
            }
            other => panic!("expected ResourceExceeded, got {other:?}"),
        }
        let dense = ideal(&r, &["x^2 + y^2 + z^2 - 1", "x - y*z"]);
        let tiny_terms = Caps {
            max_basis_len: 100,
            max_terms: 3,
        };
        match buchberger_with(
            &dense,
            MonomialOrder::Lex,
            tiny_terms,
            SelectionStrategy::default(),
        ) {
            Err(Error::ResourceExceeded(d)) => assert!(d.term_count > 3),
            other => panic!("expected ResourceExceeded, got {other:?}"),
        }
    }

    #[test]
    fn caps_text_form_parses() {
        let c = Caps::parse("500, 2000").unwrap();
        assert_eq!(c.max_basis_len, 500);
        assert_eq!(c.max_terms, 2000);
        assert!(Caps::parse("500").is_err());
        assert!(Caps::parse("0,10").is_err());
        assert!(Caps::parse("a,b").is_err());
    }

    #[test]
    fn eliminate_parametrized_curve() {
        // t |-> (t^2, t^3): the image is cut out by x^3 - y^2.
        let r = reg(&["t", "x", "y"]);
        let i = ideal(&r, &["t^2 - x", "t^3 - y"]);
        let e = eliminate(&i, ["t"]).unwrap();
        assert_eq!(e.registry().names(), &["x".to_string(), "y".to_string()]);
        let texts: Vec<String> = e.generators().iter().map(|g| g.to_string()).collect();
        assert_eq!(texts, vec!["x^3 - y^2"]);
        // Soundness: each survivor is in the original ideal and t-free.
        let gb = buchberger(&i, MonomialOrder::Block { split: 1 }).unwrap();
        for g in e.generators() {
            let lifted = g.remap(&r, MonomialOrder::Block { split: 1 }).unwrap();
            assert!(gb.normal_form(&lifted).unwrap().is_zero());
        }
    }

    #[test]
    fn eliminate_edge_cases() {
        let r = reg(&["t", "x"]);
        let i = ideal(&r, &["t - x"]);
        // Dropping nothing returns the reduced lex basis over the same vars.
        let same = eliminate(&i, Vec::<&str>::new()).unwrap();
        assert_eq!(same.registry().names(), r.names());
        assert_eq!(same.generators().len(), 1);
        // Dropping everything keeps only constants; a proper ideal has none.
        let none = eliminate(&i, ["t", "x"]).unwrap();
        assert!(none.registry().is_empty());
        assert!(none.is_zero());
        assert!(eliminate(&i, ["w"]).is_err());
        // Zero ideal eliminates to the zero ideal.
        let z = Ideal::new(Arc::clone(&r), vec![]).unwrap();
        assert!(eliminate(&z, ["t"]).unwrap().is_zero());
    }

    #[test]
    fn json_round_trip() {
        let r = reg(&["x", "y"]);
        let i = ideal(&r, &["x*y - 1", "1/2*y^2 - 1"]);
        let j = i.to_json();
        let text = serde_json::to_string(&j).unwrap();
        let back = Ideal::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back, i);
        let bad = IdealJson {
            vars: vec!["x".into()],
            generators: vec!["x + w".into()],
        };
        assert!(Ideal::from_json(&bad).is_err());
    }
}
