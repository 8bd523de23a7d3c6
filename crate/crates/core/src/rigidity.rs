//! Exact rigidity decisions for rational matrices.
//!
//! `Rig(A, r)` is the least number of entries of A that must change to
//! bring the rank to r or below, with changes allowed over the complex
//! numbers (equivalently any algebraically closed extension). Solvability
//! of one change pattern reduces to triviality of a polynomial ideal in
//! the change variables, decided by a Groebner basis: the ideal contains 1
//! exactly when no complex solution exists. Membership in the set of
//! matrices fixable on a pattern is always decided that way; evaluating
//! the elimination ideal only ever certifies NON-membership in the
//! closure, because the projection can be a proper subset of its closure.

use std::collections::HashMap;
use std::sync::Arc;

use itertools::Itertools;
use rayon::prelude::*;

use crate::cyclo::{certify_nonzero, CertifyOutcome, RootOfUnityMatrix};
use crate::detideals::{elimination_ideal_reduced_with, minors, patterns_of_size, Pattern};
use crate::error::{Error, Result};
use crate::exactla::{bareiss_rank, RationalMatrix};
use crate::groebner::{buchberger_with, Caps, Ideal, SelectionStrategy};
use crate::polyring::{MonomialOrder, Polynomial, Rational, VarRegistry};

/// Knobs for the exact rigidity search.
#[derive(Debug, Clone)]
pub struct RigOptions {
    /// Largest matrix size accepted (the pattern count grows as
    /// C(n^2, k); beyond 4 runtimes are unbounded in practice).
    pub max_n: usize,
    pub caps: Caps,
    /// Quotient the pattern enumeration by row/column permutations that
    /// fix the matrix entrywise. Off by default: for generic entries the
    /// symmetry group is trivial and the scan cost is pure overhead.
    pub orbit_reduction: bool,
}

impl Default for RigOptions {
    fn default() -> Self {
        RigOptions {
            max_n: 4,
            caps: Caps::default(),
            orbit_reduction: false,
        }
    }
}

/// Outcome of an exact rigidity computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RigidityResult {
    pub n: usize,
    pub r: usize,
    /// Rig(A, r) over the complex numbers.
    pub value: usize,
    /// Lexicographically least solvable pattern of size `value`.
    pub witness_pattern: Pattern,
    /// Patterns examined (and ruled out) at size value - 1.
    pub ruled_out: usize,
}

/// Closure membership decision for one pattern.
#[derive(Debug, Clone, PartialEq)]
pub struct MembershipDecision {
    pub in_closure: bool,
    /// When not in the closure: a generator of the elimination ideal that
    /// does not vanish at the matrix.
    pub separating_generator: Option<Polynomial>,
    /// The (nonzero) value of that generator at the matrix.
    pub nonzero_value: Option<Rational>,
}

fn square_size(a: &RationalMatrix) -> Result<usize> {
    if a.n_rows() != a.n_cols() || a.n_rows() == 0 {
        return Err(Error::Argument(format!(
            "rigidity needs a nonempty square matrix, got {}x{}",
            a.n_rows(),
            a.n_cols()
        )));
    }
    Ok(a.n_rows())
}

/// Can rank(A + T) <= r be achieved with Supp(T) inside `pattern`, T over
/// the complex numbers? Substitutes A into the generic pattern-augmented
/// matrix and asks whether the ideal of (r+1)-minors in the change
/// variables has a solution (Nullstellensatz: none iff the basis is {1}).
pub fn pattern_solvable(a: &RationalMatrix, r: usize, pattern: &Pattern) -> Result<bool> {
    pattern_solvable_with(a, r, pattern, Caps::default())
}

pub fn pattern_solvable_with(
    a: &RationalMatrix,
    r: usize,
    pattern: &Pattern,
    caps: Caps,
) -> Result<bool> {
    let n = square_size(a)?;
    pattern.validate(n)?;
    if r >= n || bareiss_rank(a) <= r {
        // T = 0 already works.
        return Ok(true);
    }
    if pattern.is_empty() {
        return Ok(false);
    }
    let k = pattern.len();
    let registry = VarRegistry::new((1..=k).map(|m| format!("t{m}")))?;
    let slot: HashMap<(usize, usize), usize> = pattern
        .iter()
        .enumerate()
        .map(|(m, cell)| (cell, m))
        .collect();
    let grid: Vec<Vec<Polynomial>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let c = Polynomial::constant(
                        Arc::clone(&registry),
                        MonomialOrder::Lex,
                        a.get(i, j).clone(),
                    );
                    match slot.get(&(i, j)) {
                        Some(&m) => {
                            let t = Polynomial::variable(
                                Arc::clone(&registry),
                                MonomialOrder::Lex,
                                m,
                            )
                            .expect("slot index in range");
                            &c + &t
                        }
                        None => c,
                    }
                })
                .collect()
        })
        .collect();
    let ideal = Ideal::new(Arc::clone(&registry), minors(&grid, r + 1)?)?;
    let gb = buchberger_with(&ideal, MonomialOrder::Lex, caps, SelectionStrategy::default())?;
    Ok(!gb.contains_one())
}

/// Row/column permutation pairs fixing the matrix entrywise.
fn symmetry_pairs(a: &RationalMatrix, n: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    let perms: Vec<Vec<usize>> = (0..n).permutations(n).collect();
    let mut pairs = Vec::new();
    for sigma in &perms {
        for tau in &perms {
            let fixes = (0..n)
                .all(|i| (0..n).all(|j| a.get(sigma[i], tau[j]) == a.get(i, j)));
            if fixes {
                pairs.push((sigma.clone(), tau.clone()));
            }
        }
    }
    pairs
}

fn orbit_minima(patterns: Vec<Pattern>, group: &[(Vec<usize>, Vec<usize>)]) -> Vec<Pattern> {
    if group.len() <= 1 {
        return patterns;
    }
    patterns
        .into_iter()
        .filter(|p| {
            let mine = p.to_vec();
            group
                .iter()
                .all(|(s, t)| p.permuted(s, t).to_vec() >= mine)
        })
        .collect()
}

/// Exact Rig(A, r): scan pattern sizes k = 0, 1, ... and return the first
/// size with a solvable pattern. Within a size, patterns are tested in
/// parallel but the reported witness is always the lexicographically least
/// solvable one (deterministic regardless of scheduling).
pub fn rig_exact(a: &RationalMatrix, r: usize) -> Result<RigidityResult> {
    rig_exact_with(a, r, &RigOptions::default())
}

pub fn rig_exact_with(
    a: &RationalMatrix,
    r: usize,
    options: &RigOptions,
) -> Result<RigidityResult> {
    let n = square_size(a)?;
    if r > n {
        return Err(Error::Argument(format!(
            "target rank r={r} exceeds the matrix size n={n}"
        )));
    }
    if n > options.max_n {
        return Err(Error::Argument(format!(
            "n={n} exceeds the configured cap {}; raise --max-n knowingly",
            options.max_n
        )));
    }
    if bareiss_rank(a) <= r {
        return Ok(RigidityResult {
            n,
            r,
            value: 0,
            witness_pattern: Pattern::empty(),
            ruled_out: 0,
        });
    }
    let group = if options.orbit_reduction {
        symmetry_pairs(a, n)
    } else {
        Vec::new()
    };
    let mut examined_prev = 1; // the empty pattern, ruled out above
    for k in 1..=(n - r) * (n - r) {
        let mut candidates = patterns_of_size(n, k);
        if options.orbit_reduction {
            candidates = orbit_minima(candidates, &group);
        }
        let hit: Option<Result<Pattern>> = candidates.par_iter().find_map_first(|p| {
            match pattern_solvable_with(a, r, p, options.caps) {
                Ok(true) => Some(Ok(p.clone())),
                Ok(false) => None,
                Err(e) => Some(Err(e)),
            }
        });
        if let Some(res) = hit {
            return Ok(RigidityResult {
                n,
                r,
                value: k,
                witness_pattern: res?,
                ruled_out: examined_prev,
            });
        }
        examined_prev = candidates.len();
    }
    Err(Error::SearchExhausted(format!(
        "no solvable pattern up to size (n-r)^2 = {}; this contradicts the \
         generic completion bound and indicates a bug",
        (n - r) * (n - r)
    )))
}

/// Is A in the Zariski closure of the matrices fixable on `pattern`? The
/// closure is exactly the vanishing locus of the elimination ideal, so
/// evaluating its generators decides membership; a nonvanishing generator
/// is a certificate of exclusion (and hence a rigidity lower bound
/// witness for sizes up to |pattern|).
pub fn closure_member(a: &RationalMatrix, r: usize, pattern: &Pattern) -> Result<MembershipDecision> {
    closure_member_with(a, r, pattern, Caps::default())
}

pub fn closure_member_with(
    a: &RationalMatrix,
    r: usize,
    pattern: &Pattern,
    caps: Caps,
) -> Result<MembershipDecision> {
    let n = square_size(a)?;
    pattern.validate(n)?;
    if r >= n {
        // Rank never exceeds n, so the set is the whole space.
        return Ok(MembershipDecision {
            in_closure: true,
            separating_generator: None,
            nonzero_value: None,
        });
    }
    let ei = elimination_ideal_reduced_with(n, r, pattern, caps)?;
    let values = a.flatten();
    for g in ei.generators() {
        let v = g.evaluate(&values)?;
        if !num_traits::Zero::is_zero(&v) {
            return Ok(MembershipDecision {
                in_closure: false,
                separating_generator: Some(g.clone()),
                nonzero_value: Some(v),
            });
        }
    }
    Ok(MembershipDecision {
        in_closure: true,
        separating_generator: None,
        nonzero_value: None,
    })
}

// ---------------------------------------------------------------------------
// Maximal-rigidity certificates.

/// What the certificate run evaluates against.
#[derive(Debug, Clone, Copy)]
pub enum CertTarget<'a> {
    Rational(&'a RationalMatrix),
    Roots(&'a RootOfUnityMatrix),
}

#[derive(Debug, Clone)]
pub struct CertOptions {
    pub caps: Caps,
    /// Retries per certificate search (root-of-unity targets).
    pub max_attempts: u32,
    pub seed: u64,
}

impl Default for CertOptions {
    fn default() -> Self {
        CertOptions {
            caps: Caps::default(),
            max_attempts: 8,
            seed: 0,
        }
    }
}

/// Per-pattern certificate outcome.
#[derive(Debug, Clone)]
pub struct PatternCertificate {
    pub pattern: Pattern,
    pub certified: bool,
    /// Text of the nonvanishing elimination-ideal generator, when found.
    pub generator: Option<String>,
    pub detail: String,
}

/// Result of certifying Rig(A, r) = (n-r)^2 by excluding A from the
/// closure at every pattern of size (n-r)^2 - 1.
#[derive(Debug, Clone)]
pub struct MaxRigidityReport {
    pub n: usize,
    pub r: usize,
    pub pattern_size: usize,
    pub total: usize,
    pub certified: usize,
    pub all_certified: bool,
    /// `Some((n-r)^2)` when every pattern is certified: the rigidity is
    /// then exactly maximal over every extension field.
    pub implied_rigidity: Option<usize>,
    pub patterns: Vec<PatternCertificate>,
}

/// Certify maximal rigidity: for every pattern of size (n-r)^2 - 1, find a
/// generator of the elimination ideal that provably does not vanish at the
/// target (exact evaluation for rational targets, finite-field certificate
/// for root-of-unity targets). Patterns without a certificate are listed
/// as inconclusive; full success implies Rig = (n-r)^2.
pub fn max_rigidity_certificate(
    target: CertTarget<'_>,
    r: usize,
    options: &CertOptions,
) -> Result<MaxRigidityReport> {
    let n = match target {
        CertTarget::Rational(a) => square_size(a)?,
        CertTarget::Roots(m) => m.n(),
    };
    if n == 0 || r >= n {
        return Err(Error::Argument(format!(
            "certificates need 0 <= r < n, got n={n}, r={r}"
        )));
    }
    let pattern_size = (n - r) * (n - r) - 1;
    let candidates = patterns_of_size(n, pattern_size);
    let rational_values = match target {
        CertTarget::Rational(a) => Some(a.flatten()),
        CertTarget::Roots(_) => None,
    };
    let patterns: Vec<PatternCertificate> = candidates
        .par_iter()
        .enumerate()
        .map(|(idx, pattern)| -> Result<PatternCertificate> {
            let ei = elimination_ideal_reduced_with(n, r, pattern, options.caps)?;
            if ei.is_zero() {
                return Ok(PatternCertificate {
                    pattern: pattern.clone(),
                    certified: false,
                    generator: None,
                    detail: "elimination ideal is zero; its vanishing locus is everything".into(),
                });
            }
            match (&rational_values, target) {
                (Some(values), _) => {
                    for g in ei.generators() {
                        let v = g.evaluate(values)?;
                        if !num_traits::Zero::is_zero(&v) {
                            return Ok(PatternCertificate {
                                pattern: pattern.clone(),
                                certified: true,
                                generator: Some(g.to_string()),
                                detail: format!("evaluates to {v}"),
                            });
                        }
                    }
                    Ok(PatternCertificate {
                        pattern: pattern.clone(),
                        certified: false,
                        generator: None,
                        detail: "every generator vanishes at the matrix (it lies in the closure)"
                            .into(),
                    })
                }
                (None, CertTarget::Roots(m)) => {
                    let mut attempts_note = String::new();
                    for (gidx, g) in ei.generators().iter().enumerate() {
                        let seed = options
                            .seed
                            .wrapping_add(1 + idx as u64 * 1_000 + gidx as u64);
                        match certify_nonzero(g, m.entries_flat(), options.max_attempts, seed)? {
                            CertifyOutcome::Certified(c) => {
                                return Ok(PatternCertificate {
                                    pattern: pattern.clone(),
                                    certified: true,
                                    generator: Some(g.to_string()),
                                    detail: format!(
                                        "residue {} mod q={} (attempt {})",
                                        c.residue, c.modulus, c.attempts
                                    ),
                                });
                            }
                            CertifyOutcome::Inconclusive { attempts } => {
                                attempts_note = format!(
                                    "no generator certified within {attempts} attempts each"
                                );
                            }
                        }
                    }
                    Ok(PatternCertificate {
                        pattern: pattern.clone(),
                        certified: false,
                        generator: None,
                        detail: attempts_note,
                    })
                }
                (None, CertTarget::Rational(_)) => unreachable!("values prepared above"),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let certified = patterns.iter().filter(|p| p.certified).count();
    let all_certified = certified == patterns.len();
    Ok(MaxRigidityReport {
        n,
        r,
        pattern_size,
        total: patterns.len(),
        certified,
        all_certified,
        implied_rigidity: all_certified.then_some((n - r) * (n - r)),
        patterns,
    })
}

// ---------------------------------------------------------------------------
// Witness change matrices (best effort).

/// Try to produce actual change values T with Supp(T) inside `pattern` and
/// rank(A + T) <= r. Two cheap strategies: zero out every pattern entry, or
/// find an invertible r x r submatrix (rows R, cols C) whose full complement
/// block lies inside the pattern and overwrite that block with the values
/// forced by rank-r completion. Returns None when neither applies; the
/// yes/no decision from `pattern_solvable` stands regardless.
pub fn witness_changes(
    a: &RationalMatrix,
    r: usize,
    pattern: &Pattern,
) -> Result<Option<RationalMatrix>> {
    let n = square_size(a)?;
    pattern.validate(n)?;
    if bareiss_rank(a) <= r {
        return Ok(Some(RationalMatrix::zeros(n, n)));
    }
    {
        let mut t = RationalMatrix::zeros(n, n);
        for (i, j) in pattern.iter() {
            t.set(i, j, -a.get(i, j).clone());
        }
        if bareiss_rank(&a.add(&t)?) <= r {
            return Ok(Some(t));
        }
    }
    if r == 0 {
        // Completion target is the zero matrix; if zeroing the pattern did
        // not already reach it, some nonzero entry lies outside the pattern.
        return Ok(None);
    }
    for rows in (0..n).combinations(r) {
        for cols in (0..n).combinations(r) {
            let block = a.submatrix(&rows, &cols);
            if bareiss_rank(&block) < r {
                continue;
            }
            let complement_ok = (0..n)
                .filter(|i| !rows.contains(i))
                .all(|i| {
                    (0..n)
                        .filter(|j| !cols.contains(j))
                        .all(|j| pattern.contains(i, j))
                });
            if !complement_ok {
                continue;
            }
            let inv = block.inverse()?;
            let other_rows: Vec<usize> = (0..n).filter(|i| !rows.contains(i)).collect();
            let other_cols: Vec<usize> = (0..n).filter(|j| !cols.contains(j)).collect();
            let left = a.submatrix(&other_rows, &cols);
            let right = a.submatrix(&rows, &other_cols);
            let completed = left.mul(&inv.mul(&right)?)?;
            let mut t = RationalMatrix::zeros(n, n);
            for (bi, &i) in other_rows.iter().enumerate() {
                for (bj, &j) in other_cols.iter().enumerate() {
                    t.set(i, j, completed.get(bi, bj) - a.get(i, j));
                }
            }
            let fixed = a.add(&t)?;
            debug_assert!(bareiss_rank(&fixed) <= r);
            return Ok(Some(t));
        }
    }
    Ok(None)
}

// ---------------------------------------------------------------------------
// Example families.

/// The documented rigidity claim (at target rank 1) for a family instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DocumentedRigidity {
    Exact(usize),
    AtMost(usize),
}

/// Named example matrix families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyKind {
    /// [[a,b,c],[d,0,0],[e,0,0]]: rank 2, Rig(., 1) = 2.
    Cross3,
    /// The rank-one-update perturbation of Cross3: Rig(., 1) = 1.
    Cross3Perturbed,
    /// n x n with generic first row and column, zeros elsewhere:
    /// Rig(., 1) = n - 1.
    CrossN,
    /// Its perturbation: Rig(., 1) = 1 for any valid delta.
    CrossNPerturbed,
    /// [[a,b,c],[d,e,0],[g,0,i]]: maximally rigid, Rig(., 1) = 4.
    MaxRigid3,
    /// Its diagonal-fixable perturbation: Rig(., 1) <= 3.
    MaxRigid3Perturbed,
    /// [[2,3,5],[7,11,13],[17,19,23]]: all submatrices invertible,
    /// Rig(., 1) = 4.
    Primes3,
    /// [[1,p,p^2],[1,q,q^2],[1,r,r^2]] on distinct primes: totally
    /// positive, so again Rig(., 1) = 4.
    VandermondePrimes,
}

impl FamilyKind {
    pub fn parse(s: &str) -> Result<FamilyKind> {
        match s {
            "cross3" => Ok(FamilyKind::Cross3),
            "cross3-perturbed" => Ok(FamilyKind::Cross3Perturbed),
            "crossn" => Ok(FamilyKind::CrossN),
            "crossn-perturbed" => Ok(FamilyKind::CrossNPerturbed),
            "maxrigid3" => Ok(FamilyKind::MaxRigid3),
            "maxrigid3-perturbed" => Ok(FamilyKind::MaxRigid3Perturbed),
            "primes3" => Ok(FamilyKind::Primes3),
            "vandermonde-primes" => Ok(FamilyKind::VandermondePrimes),
            other => Err(Error::Argument(format!(
                "unknown family {other:?}; known: {}",
                FamilyKind::ALL.iter().map(|k| k.name()).join(", ")
            ))),
        }
    }

    pub const ALL: [FamilyKind; 8] = [
        FamilyKind::Cross3,
        FamilyKind::Cross3Perturbed,
        FamilyKind::CrossN,
        FamilyKind::CrossNPerturbed,
        FamilyKind::MaxRigid3,
        FamilyKind::MaxRigid3Perturbed,
        FamilyKind::Primes3,
        FamilyKind::VandermondePrimes,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            FamilyKind::Cross3 => "cross3",
            FamilyKind::Cross3Perturbed => "cross3-perturbed",
            FamilyKind::CrossN => "crossn",
            FamilyKind::CrossNPerturbed => "crossn-perturbed",
            FamilyKind::MaxRigid3 => "maxrigid3",
            FamilyKind::MaxRigid3Perturbed => "maxrigid3-perturbed",
            FamilyKind::Primes3 => "primes3",
            FamilyKind::VandermondePrimes => "vandermonde-primes",
        }
    }
}

/// A constructed family instance with its documented rigidity claim.
#[derive(Debug, Clone)]
pub struct FamilyInstance {
    pub kind: FamilyKind,
    pub matrix: RationalMatrix,
    /// Claim about Rig(matrix, 1).
    pub documented: DocumentedRigidity,
    pub note: String,
}

fn int(v: i64) -> Rational {
    Rational::from_integer(v.into())
}

/// Build a family instance. `n` applies to the crossn kinds (default 4);
/// `delta` applies to the perturbed kinds (default 1/10) and must avoid
/// the degenerate values (0, and 1/alpha for the cross kinds, where the
/// perturbed matrix would already have rank 1).
pub fn family_instance(
    kind: FamilyKind,
    n: Option<usize>,
    delta: Option<Rational>,
) -> Result<FamilyInstance> {
    use num_traits::Zero;
    let delta_val = || delta.clone().unwrap_or_else(|| Rational::new(1.into(), 10.into()));
    let check_delta = |d: &Rational, alpha: Option<&Rational>| -> Result<()> {
        if d.is_zero() {
            return Err(Error::Argument("delta must be nonzero".into()));
        }
        if let Some(a) = alpha {
            if d == &(Rational::from_integer(1.into()) / a) {
                return Err(Error::Argument(
                    "delta = 1/alpha collapses the perturbed matrix to rank 1".into(),
                ));
            }
        }
        Ok(())
    };
    let reject_n = |kind: &str| -> Result<()> {
        if n.is_some() {
            return Err(Error::Argument(format!("family {kind} has fixed size 3")));
        }
        Ok(())
    };
    match kind {
        FamilyKind::Cross3 => {
            reject_n("cross3")?;
            let m = RationalMatrix::from_i64(&[&[2, 3, 5], &[7, 0, 0], &[11, 0, 0]]);
            Ok(FamilyInstance {
                kind,
                matrix: m,
                documented: DocumentedRigidity::Exact(2),
                note: "rank 2; two changes (and no fewer) reach rank 1".into(),
            })
        }
        FamilyKind::Cross3Perturbed => {
            reject_n("cross3-perturbed")?;
            let d = delta_val();
            let alpha = int(2);
            check_delta(&d, Some(&alpha))?;
            let (a, b, c, dd, e) = (int(2), int(3), int(5), int(7), int(11));
            let m = RationalMatrix::from_rows(vec![
                vec![a, b.clone(), c.clone()],
                vec![dd.clone(), &b * &dd * &d, &c * &dd * &d],
                vec![e.clone(), &b * &e * &d, &c * &e * &d],
            ])?;
            Ok(FamilyInstance {
                kind,
                matrix: m,
                documented: DocumentedRigidity::Exact(1),
                note: "changing the corner to 1/delta zeroes every 2x2 minor".into(),
            })
        }
        FamilyKind::CrossN | FamilyKind::CrossNPerturbed => {
            let size = n.unwrap_or(4);
            if size < 2 {
                return Err(Error::Argument("crossn needs n >= 2".into()));
            }
            let alpha = int(2);
            let tops: Vec<Rational> = (1..size).map(|i| int(i as i64 + 1)).collect();
            let sides: Vec<Rational> = (1..size).map(|i| int(i as i64 + 1)).collect();
            let mut rows = vec![vec![Rational::zero(); size]; size];
            rows[0][0] = alpha.clone();
            rows[0][1..].clone_from_slice(&tops);
            for (row, side) in rows[1..].iter_mut().zip(&sides) {
                row[0] = side.clone();
            }
            if kind == FamilyKind::CrossN {
                if delta.is_some() {
                    return Err(Error::Argument("crossn takes no delta".into()));
                }
                return Ok(FamilyInstance {
                    kind,
                    matrix: RationalMatrix::from_rows(rows)?,
                    documented: DocumentedRigidity::Exact(size - 1),
                    note: "rank 2; rigidity n - 1 at target rank 1".into(),
                });
            }
            let d = delta_val();
            check_delta(&d, Some(&alpha))?;
            for i in 1..size {
                for j in 1..size {
                    rows[i][j] = &(&tops[j - 1] * &sides[i - 1]) * &d;
                }
            }
            Ok(FamilyInstance {
                kind,
                matrix: RationalMatrix::from_rows(rows)?,
                documented: DocumentedRigidity::Exact(1),
                note: "changing the corner to 1/delta zeroes every 2x2 minor".into(),
            })
        }
        FamilyKind::MaxRigid3 => {
            reject_n("maxrigid3")?;
            let m = RationalMatrix::from_i64(&[&[2, 3, 5], &[7, 11, 0], &[13, 0, 17]]);
            Ok(FamilyInstance {
                kind,
                matrix: m,
                documented: DocumentedRigidity::Exact(4),
                note: "maximally rigid, yet inside the closure of the diagonal-fixable set"
                    .into(),
            })
        }
        FamilyKind::MaxRigid3Perturbed => {
            reject_n("maxrigid3-perturbed")?;
            let d = delta_val();
            check_delta(&d, None)?;
            let (a, b, c, dd, e, g, i) =
                (int(2), int(3), int(5), int(7), int(11), int(13), int(17));
            let m = RationalMatrix::from_rows(vec![
                vec![a, b.clone(), c.clone()],
                vec![dd.clone(), e, &(&c * &dd) * &d],
                vec![g.clone(), &(&b * &g) * &d, i],
            ])?;
            Ok(FamilyInstance {
                kind,
                matrix: m,
                documented: DocumentedRigidity::AtMost(3),
                note: "three diagonal changes reach rank 1".into(),
            })
        }
        FamilyKind::Primes3 => {
            reject_n("primes3")?;
            let m = RationalMatrix::from_i64(&[&[2, 3, 5], &[7, 11, 13], &[17, 19, 23]]);
            Ok(FamilyInstance {
                kind,
                matrix: m,
                documented: DocumentedRigidity::Exact(4),
                note: "all submatrices invertible; outside every size-3 closure".into(),
            })
        }
        FamilyKind::VandermondePrimes => {
            reject_n("vandermonde-primes")?;
            let m = RationalMatrix::from_i64(&[&[1, 2, 4], &[1, 3, 9], &[1, 5, 25]]);
            Ok(FamilyInstance {
                kind,
                matrix: m,
                documented: DocumentedRigidity::Exact(4),
                note: "totally positive Vandermonde on primes 2, 3, 5".into(),
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::seeded_rng;
    use rand::Rng;

    fn cross3() -> RationalMatrix {
        family_instance(FamilyKind::Cross3, None, None).unwrap().matrix
    }

    #[test]
    fn cross3_needs_exactly_two_changes() {
        let a = cross3();
        assert_eq!(bareiss_rank(&a), 2);
        // No single change suffices, but zeroing the two right entries of
        // the first row does.
        for k1 in patterns_of_size(3, 1) {
            assert!(!pattern_solvable(&a, 1, &k1).unwrap());
        }
        assert!(pattern_solvable(&a, 1, &Pattern::new([(0, 1), (0, 2)])).unwrap());
        assert!(pattern_solvable(&a, 1, &Pattern::new([(1, 0), (2, 0)])).unwrap());
        assert!(!pattern_solvable(&a, 1, &Pattern::new([(0, 0), (0, 1)])).unwrap());
        let rig = rig_exact(&a, 1).unwrap();
        assert_eq!(rig.value, 2);
        assert_eq!(rig.witness_pattern, Pattern::new([(0, 1), (0, 2)]));
        assert_eq!(rig.ruled_out, 9);
        // Already at rank 2.
        let at_rank = rig_exact(&a, 2).unwrap();
        assert_eq!(at_rank.value, 0);
        assert!(at_rank.witness_pattern.is_empty());
    }

    #[test]
    fn empty_pattern_and_trivial_ranks() {
        let a = cross3();
        assert!(pattern_solvable(&a, 2, &Pattern::empty()).unwrap());
        assert!(!pattern_solvable(&a, 1, &Pattern::empty()).unwrap());
        assert!(pattern_solvable(&a, 3, &Pattern::empty()).unwrap());
        assert!(pattern_solvable(&a, 5, &Pattern::empty()).unwrap());
    }

    #[test]
    fn perturbed_families_have_rigidity_one() {
        let p = family_instance(FamilyKind::Cross3Perturbed, None, None).unwrap();
        assert_eq!(bareiss_rank(&p.matrix), 2);
        let rig = rig_exact(&p.matrix, 1).unwrap();
        assert_eq!(rig.value, 1);
        assert_eq!(rig.witness_pattern, Pattern::new([(0, 0)]));
        let pn = family_instance(FamilyKind::CrossNPerturbed, Some(4), None).unwrap();
        assert_eq!(bareiss_rank(&pn.matrix), 2);
        assert_eq!(rig_exact(&pn.matrix, 1).unwrap().value, 1);
    }

    #[test]
    fn crossn_rigidity_is_n_minus_one() {
        for n in [3usize, 4] {
            let f = family_instance(FamilyKind::CrossN, Some(n), None).unwrap();
            assert_eq!(bareiss_rank(&f.matrix), 2);
            let rig = rig_exact(&f.matrix, 1).unwrap();
            assert_eq!(rig.value, n - 1, "crossn at n={n}");
        }
    }

    #[test]
    fn family_validation() {
        assert!(family_instance(FamilyKind::Cross3Perturbed, None, Some(int(0))).is_err());
        // delta = 1/alpha = 1/2 collapses to rank 1.
        assert!(family_instance(
            FamilyKind::Cross3Perturbed,
            None,
            Some(Rational::new(1.into(), 2.into()))
        )
        .is_err());
        assert!(family_instance(FamilyKind::CrossN, Some(1), None).is_err());
        assert!(family_instance(FamilyKind::Cross3, Some(4), None).is_err());
        assert!(family_instance(FamilyKind::CrossN, None, Some(int(1))).is_err());
        assert!(FamilyKind::parse("primes3").is_ok());
        assert!(FamilyKind::parse("nope").is_err());
        for kind in FamilyKind::ALL {
            assert_eq!(FamilyKind::parse(kind.name()).unwrap(), kind);
        }
    }

    #[test]
    fn closure_membership_versus_solvability() {
        // The cross matrix is NOT fixable with one change, yet it lies in
        // the closure of the corner-fixable set: the set is not closed.
        let a = cross3();
        let corner = Pattern::new([(0, 0)]);
        let m = closure_member(&a, 1, &corner).unwrap();
        assert!(m.in_closure);
        assert!(m.separating_generator.is_none());
        assert!(!pattern_solvable(&a, 1, &corner).unwrap());
        // The prime matrix is excluded from the diagonal closure by the
        // lone elimination-ideal generator.
        let p = family_instance(FamilyKind::Primes3, None, None).unwrap().matrix;
        let d = closure_member(&p, 1, &Pattern::diagonal(3)).unwrap();
        assert!(!d.in_closure);
        assert_eq!(
            d.separating_generator.unwrap().to_string(),
            "x2*x6*x7 - x3*x4*x8"
        );
        assert_eq!(d.nonzero_value.unwrap(), int(-2));
        // Corner-block pattern of full size (n-r)^2: zero elimination
        // ideal, everything is in the closure.
        let block = Pattern::new([(1, 1), (1, 2), (2, 1), (2, 2)]);
        assert!(closure_member(&p, 1, &block).unwrap().in_closure);
    }

    #[test]
    fn maxrigid3_is_maximal_but_not_certifiable() {
        let f = family_instance(FamilyKind::MaxRigid3, None, None).unwrap();
        assert_eq!(bareiss_rank(&f.matrix), 3);
        let rig = rig_exact(&f.matrix, 1).unwrap();
        assert_eq!(rig.value, 4);
        assert_eq!(rig.ruled_out, 84);
        // The diagonal generator b*f*g - c*d*h vanishes here (f = h = 0),
        // so the matrix is inside the diagonal closure...
        assert!(closure_member(&f.matrix, 1, &Pattern::diagonal(3)).unwrap().in_closure);
        // ...and the maximal-rigidity certificate must honestly fail on
        // that pattern even though the rigidity IS maximal.
        let report =
            max_rigidity_certificate(CertTarget::Rational(&f.matrix), 1, &CertOptions::default())
                .unwrap();
        assert_eq!(report.total, 84);
        assert!(!report.all_certified);
        assert!(report.implied_rigidity.is_none());
        let diag_entry = report
            .patterns
            .iter()
            .find(|p| p.pattern == Pattern::diagonal(3))
            .unwrap();
        assert!(!diag_entry.certified);
    }

    #[test]
    fn maxrigid3_perturbed_is_diagonal_fixable() {
        let f = family_instance(FamilyKind::MaxRigid3Perturbed, None, None).unwrap();
        assert!(pattern_solvable(&f.matrix, 1, &Pattern::diagonal(3)).unwrap());
        let rig = rig_exact(&f.matrix, 1).unwrap();
        assert!(rig.value <= 3);
        assert_eq!(rig.value, 3);
    }

    #[test]
    fn prime_and_vandermonde_matrices_are_maximally_rigid() {
        for kind in [FamilyKind::Primes3, FamilyKind::VandermondePrimes] {
            let f = family_instance(kind, None, None).unwrap();
            let rig = rig_exact(&f.matrix, 1).unwrap();
            assert_eq!(rig.value, 4, "{}", kind.name());
        }
    }

    #[test]
    fn rigidity_invariants_on_seeded_matrices() {
        let mut rng = seeded_rng(7);
        for _ in 0..4 {
            let a = RationalMatrix::from_rows(
                (0..3)
                    .map(|_| (0..3).map(|_| int(rng.random_range(-5..=5))).collect())
                    .collect(),
            )
            .unwrap();
            let rank = bareiss_rank(&a);
            assert_eq!(rig_exact(&a, rank).unwrap().value, 0);
            let mut prev = usize::MAX;
            for r in 1..=2usize {
                let rig = rig_exact(&a, r).unwrap();
                assert!(rig.value <= (3 - r) * (3 - r));
                assert!(rig.value <= prev, "monotone in r");
                prev = rig.value;
                assert!(pattern_solvable(&a, r, &rig.witness_pattern).unwrap());
                // The witness pattern is also in the closure.
                assert!(closure_member(&a, r, &rig.witness_pattern).unwrap().in_closure);
            }
        }
    }

    #[test]
    fn rigidity_is_permutation_invariant() {
        let a = family_instance(FamilyKind::MaxRigid3Perturbed, None, None)
            .unwrap()
            .matrix;
        let base = rig_exact(&a, 1).unwrap().value;
        let mut rng = seeded_rng(21);
        for _ in 0..3 {
            let mut rows: Vec<usize> = (0..3).collect();
            let mut cols: Vec<usize> = (0..3).collect();
            for i in (1..3).rev() {
                rows.swap(i, rng.random_range(0..=i));
                cols.swap(i, rng.random_range(0..=i));
            }
            let permuted = RationalMatrix::from_rows(
                (0..3)
                    .map(|i| (0..3).map(|j| a.get(rows[i], cols[j]).clone()).collect())
                    .collect(),
            )
            .unwrap();
            assert_eq!(rig_exact(&permuted, 1).unwrap().value, base);
        }
    }

    #[test]
    fn orbit_reduction_agrees_with_full_enumeration() {
        // The identity matrix has a large symmetry group; reduction must
        // not change the answer, only shrink the scan.
        let i3 = RationalMatrix::identity(3);
        let full = rig_exact_with(&i3, 0, &RigOptions::default()).unwrap();
        let reduced = rig_exact_with(
            &i3,
            0,
            &RigOptions {
                orbit_reduction: true,
                ..RigOptions::default()
            },
        )
        .unwrap();
        assert_eq!(full.value, 3);
        assert_eq!(full.witness_pattern, Pattern::diagonal(3));
        assert_eq!(reduced.value, 3);
        assert_eq!(reduced.witness_pattern, Pattern::diagonal(3));
        assert!(reduced.ruled_out < full.ruled_out);
        // On an asymmetric matrix the group is trivial and results match.
        let p = family_instance(FamilyKind::Primes3, None, None).unwrap().matrix;
        let r1 = rig_exact_with(
            &p,
            2,
            &RigOptions {
                orbit_reduction: true,
                ..RigOptions::default()
            },
        )
        .unwrap();
        let r2 = rig_exact(&p, 2).unwrap();
        assert_eq!(r1.value, r2.value);
        assert_eq!(r1.witness_pattern, r2.witness_pattern);
        assert_eq!(r1.ruled_out, r2.ruled_out);
    }

    #[test]
    fn witness_changes_complete_when_a_block_fits() {
        let p = family_instance(FamilyKind::Primes3, None, None).unwrap().matrix;
        // Pattern = complement of the (0,0) block: completion exists.
        let block = Pattern::new([(1, 1), (1, 2), (2, 1), (2, 2)]);
        let t = witness_changes(&p, 1, &block).unwrap().unwrap();
        let fixed = p.add(&t).unwrap();
        assert_eq!(bareiss_rank(&fixed), 1);
        for (i, j) in t.support().iter() {
            assert!(block.contains(i, j));
        }
        // A too-small pattern yields no best-effort witness.
        assert!(witness_changes(&p, 1, &Pattern::new([(0, 0)])).unwrap().is_none());
        // Zeroing the off-corner cross arms is itself a witness even though
        // no completion block fits inside the two-cell pattern.
        let c = cross3();
        let tz = witness_changes(&c, 1, &Pattern::new([(0, 1), (0, 2)])).unwrap().unwrap();
        let fixed = c.add(&tz).unwrap();
        assert_eq!(bareiss_rank(&fixed), 1);
        assert_eq!(tz.support().to_vec(), vec![(0, 1), (0, 2)]);
        // r = 0 with full support works.
        let t0 = witness_changes(&p, 0, &p.support()).unwrap().unwrap();
        assert_eq!(bareiss_rank(&p.add(&t0).unwrap()), 0);
        // Rank already low: zero changes.
        let low = RationalMatrix::from_i64(&[&[1, 2], &[2, 4]]);
        let tl = witness_changes(&low, 1, &Pattern::empty()).unwrap().unwrap();
        assert!(tl.support().is_empty());
    }

    #[test]
    fn input_validation_and_caps() {
        let a = cross3();
        assert!(rig_exact(&a, 4).is_err());
        let rect = RationalMatrix::zeros(2, 3);
        assert!(rig_exact(&rect, 1).is_err());
        let big = RationalMatrix::identity(5);
        let err = rig_exact(&big, 1).unwrap_err();
        assert!(err.to_string().contains("max-n"), "{err}");
        // The corner-block system carries a 7-term minor, so a 3-term width
        // cap must trip somewhere in the reduction.
        let tight = Caps {
            max_basis_len: 10_000,
            max_terms: 3,
        };
        let p = family_instance(FamilyKind::Primes3, None, None).unwrap().matrix;
        let block = Pattern::new([(1, 1), (1, 2), (2, 1), (2, 2)]);
        assert!(matches!(
            pattern_solvable_with(&p, 1, &block, tight),
            Err(Error::ResourceExceeded(_))
        ));
    }
}
