//! Roots of unity as exact matrix entries, finite-field nonvanishing
//! certificates, and the order/degree bound calculators.
//!
//! The certificate is one-sided by design: to show a polynomial expression
//! in prime-order roots of unity is nonzero, pick a prime q congruent to 1
//! mod every order, realize order-p elements inside F_q, and evaluate. Any
//! such assignment is the reduction of the true cyclotomic integers at some
//! prime above q (q splits completely), so a nonzero residue proves the
//! value nonzero. A zero residue proves nothing and only triggers a retry
//! with a fresh q and fresh roots.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::exactla::seeded_rng;
use crate::polyring::{Polynomial, Rational};

// ---------------------------------------------------------------------------
// Primality (deterministic for u64).

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn powmod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, m);
        }
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin: the witness set {2, 3, ..., 37} decides
/// primality for every u64.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d & 1 == 0 {
        d >>= 1;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// The first `count` primes that are >= `min`.
pub fn first_primes_at_least(min: u64, count: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(count);
    let mut n = min.max(2);
    while out.len() < count {
        if is_prime_u64(n) {
            out.push(n);
        }
        n += 1;
    }
    out
}

// ---------------------------------------------------------------------------
// Order and degree bounds.

/// An integer kept in the factored form `scale * base^exponent`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderBound {
    pub scale: u32,
    pub base: u64,
    pub exponent: u64,
    pub value: BigUint,
}

impl fmt::Display for OrderBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.scale == 1 {
            write!(f, "{}^{}", self.base, self.exponent)
        } else {
            write!(f, "{}*{}^{}", self.scale, self.base, self.exponent)
        }
    }
}

fn order_bound(scale: u32, base: u64, exponent: u64) -> OrderBound {
    let value = BigUint::from(scale)
        * BigUint::from(base).pow(u32::try_from(exponent).expect("exponent fits u32"));
    OrderBound {
        scale,
        base,
        exponent,
        value,
    }
}

/// Sufficient root order for the full construction: n^(4 n^2).
pub fn delta_full(n: usize) -> Result<OrderBound> {
    if n == 0 {
        return Err(Error::Argument("n must be positive".into()));
    }
    Ok(order_bound(1, n as u64, 4 * (n as u64) * (n as u64)))
}

/// Sufficient root order via the reduced elimination: 2 n^(2 n^2).
pub fn delta_reduced(n: usize) -> Result<OrderBound> {
    if n == 0 {
        return Err(Error::Argument("n must be positive".into()));
    }
    Ok(order_bound(2, n as u64, 2 * (n as u64) * (n as u64)))
}

/// Which variable count enters the elimination degree bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundVariant {
    /// All of x and t: m = n^2 + (n-r)^2 - 1.
    Full,
    /// The generic matrix alone: m = n^2.
    Reduced,
}

/// Degree bound D(D+1) with D = d^m, d = max(r+1, 3), for generators of an
/// elimination ideal produced from degree-(r+1) inputs in m variables.
pub fn elimination_degree_bound(n: usize, r: usize, variant: BoundVariant) -> Result<BigUint> {
    if n == 0 || r >= n {
        return Err(Error::Argument(format!(
            "degree bound needs 0 <= r < n, got n={n}, r={r}"
        )));
    }
    let d = BigUint::from((r + 1).max(3));
    let m = match variant {
        BoundVariant::Full => n * n + (n - r) * (n - r) - 1,
        BoundVariant::Reduced => n * n,
    };
    let big = d.pow(u32::try_from(m).expect("m fits u32"));
    Ok(&big * (&big + BigUint::one()))
}

/// Bound comparison for one (n, r): the degree bound of each variant against
/// the corresponding sufficient order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundsReport {
    pub n: usize,
    pub r: usize,
    pub delta_full: OrderBound,
    pub delta_reduced: OrderBound,
    pub degree_bound_full: BigUint,
    pub degree_bound_reduced: BigUint,
    /// degree_bound_full < delta_full.value
    pub full_below_delta: bool,
    /// degree_bound_reduced < delta_reduced.value
    pub reduced_below_delta: bool,
}

pub fn bounds_report(n: usize, r: usize) -> Result<BoundsReport> {
    let delta_full = delta_full(n)?;
    let delta_reduced = delta_reduced(n)?;
    let degree_bound_full = elimination_degree_bound(n, r, BoundVariant::Full)?;
    let degree_bound_reduced = elimination_degree_bound(n, r, BoundVariant::Reduced)?;
    let full_below_delta = degree_bound_full < delta_full.value;
    let reduced_below_delta = degree_bound_reduced < delta_reduced.value;
    Ok(BoundsReport {
        n,
        r,
        delta_full,
        delta_reduced,
        degree_bound_full,
        degree_bound_reduced,
        full_below_delta,
        reduced_below_delta,
    })
}

// ---------------------------------------------------------------------------
// Root-of-unity matrices.

/// One matrix entry: `zeta(p)^e` (a primitive p-th root to the e-th power)
/// or `rezeta(p)^e` (that root plus its inverse, an exact real).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RootEntry {
    pub prime: u64,
    pub exponent: u64,
    pub real_part: bool,
}

impl RootEntry {
    pub fn new(prime: u64, exponent: u64, real_part: bool) -> Result<RootEntry> {
        if !is_prime_u64(prime) {
            return Err(Error::Argument(format!("{prime} is not prime")));
        }
        if exponent == 0 || exponent >= prime {
            return Err(Error::Argument(format!(
                "exponent must satisfy 1 <= e < p, got e={exponent}, p={prime}"
            )));
        }
        Ok(RootEntry {
            prime,
            exponent,
            real_part,
        })
    }

    /// Serialized token: `zeta(p)`, `zeta(p)^e`, `rezeta(p)^e`.
    pub fn token(&self) -> String {
        let head = if self.real_part { "rezeta" } else { "zeta" };
        if self.exponent == 1 {
            format!("{head}({})", self.prime)
        } else {
            format!("{head}({})^{}", self.prime, self.exponent)
        }
    }

    pub fn parse(s: &str) -> Result<RootEntry> {
        let s = s.trim();
        let (real_part, rest) = if let Some(r) = s.strip_prefix("rezeta") {
            (true, r)
        } else if let Some(r) = s.strip_prefix("zeta") {
            (false, r)
        } else {
            return Err(Error::Parse(format!("bad root token {s:?}")));
        };
        let err = || Error::Parse(format!("bad root token {s:?}"));
        let rest = rest.strip_prefix('(').ok_or_else(err)?;
        let close = rest.find(')').ok_or_else(err)?;
        let prime: u64 = rest[..close].trim().parse().map_err(|_| err())?;
        let tail = &rest[close + 1..];
        let exponent: u64 = if tail.is_empty() {
            1
        } else {
            let t = tail.strip_prefix('^').ok_or_else(err)?;
            t.trim().parse().map_err(|_| err())?
        };
        RootEntry::new(prime, exponent, real_part)
    }
}

/// An n x n matrix whose entries are roots of unity of pairwise distinct
/// prime orders, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootOfUnityMatrix {
    n: usize,
    entries: Vec<RootEntry>,
}

impl RootOfUnityMatrix {
    pub fn new(n: usize, entries: Vec<RootEntry>) -> Result<RootOfUnityMatrix> {
        if entries.len() != n * n {
            return Err(Error::Argument(format!(
                "expected {} entries, got {}",
                n * n,
                entries.len()
            )));
        }
        let mut seen = HashSet::new();
        for e in &entries {
            if !seen.insert(e.prime) {
                return Err(Error::Argument(format!(
                    "prime {} appears in more than one entry",
                    e.prime
                )));
            }
        }
        Ok(RootOfUnityMatrix { n, entries })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Entries flattened row-major, aligned with x1..x(n^2).
    pub fn entries_flat(&self) -> &[RootEntry] {
        &self.entries
    }

    pub fn entry(&self, i: usize, j: usize) -> &RootEntry {
        &self.entries[i * self.n + j]
    }

    pub fn to_json(&self) -> crate::exactla::MatrixJson {
        crate::exactla::MatrixJson {
            rows: self.n,
            cols: self.n,
            entries: (0..self.n)
                .map(|i| (0..self.n).map(|j| self.entry(i, j).token()).collect())
                .collect(),
        }
    }

    pub fn from_json(j: &crate::exactla::MatrixJson) -> Result<RootOfUnityMatrix> {
        if j.rows != j.cols {
            return Err(Error::Parse("root matrix must be square".into()));
        }
        if j.entries.len() != j.rows || j.entries.iter().any(|r| r.len() != j.cols) {
            return Err(Error::Parse("root matrix entry grid shape mismatch".into()));
        }
        let entries = j
            .entries
            .iter()
            .flatten()
            .map(|s| RootEntry::parse(s))
            .collect::<Result<Vec<_>>>()?;
        RootOfUnityMatrix::new(j.rows, entries)
    }
}

/// Fill an n x n matrix with first powers of roots of the given n^2 primes.
pub fn build_root_matrix(n: usize, primes: &[u64], real_part: bool) -> Result<RootOfUnityMatrix> {
    if primes.len() != n * n {
        return Err(Error::Argument(format!(
            "need {} primes for a {n}x{n} matrix, got {}",
            n * n,
            primes.len()
        )));
    }
    let entries = primes
        .iter()
        .map(|&p| RootEntry::new(p, 1, real_part))
        .collect::<Result<Vec<_>>>()?;
    RootOfUnityMatrix::new(n, entries)
}

// ---------------------------------------------------------------------------
// Nonvanishing certificates.

/// A verifiable witness that an evaluation is nonzero: the modulus, the
/// chosen order-p elements, and the nonzero residue.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonvanishingCertificate {
    pub modulus: u64,
    /// prime p -> the order-p element of F_modulus assigned to zeta(p).
    pub roots: BTreeMap<u64, u64>,
    pub residue: u64,
    /// 1-based attempt index that succeeded.
    pub attempts: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CertifyOutcome {
    Certified(NonvanishingCertificate),
    /// Every attempt reduced to zero; the value is probably zero, but this
    /// outcome proves nothing either way.
    Inconclusive { attempts: u32 },
}

impl CertifyOutcome {
    pub fn is_certified(&self) -> bool {
        matches!(self, CertifyOutcome::Certified(_))
    }
}

/// Certify that `g`, evaluated with registry variable i bound to
/// `roots[i]`, is a nonzero algebraic number. One-sided: `Certified` is a
/// proof, `Inconclusive` is not a zero claim. Deterministic per seed.
pub fn certify_nonzero(
    g: &Polynomial,
    roots: &[RootEntry],
    max_attempts: u32,
    seed: u64,
) -> Result<CertifyOutcome> {
    if roots.len() != g.registry().len() {
        return Err(Error::Registry(format!(
            "{} roots for a registry of {}",
            roots.len(),
            g.registry().len()
        )));
    }
    if max_attempts == 0 {
        return Err(Error::Argument("max_attempts must be positive".into()));
    }
    let mut distinct: Vec<u64> = roots.iter().map(|r| r.prime).collect();
    distinct.sort_unstable();
    distinct.dedup();
    let product: u64 = distinct
        .iter()
        .try_fold(1u64, |acc, &p| acc.checked_mul(p))
        .ok_or_else(|| Error::Argument("product of root orders overflows u64".into()))?;

    // Clear denominators; scaling by a nonzero rational preserves (non)vanishing.
    let cleared: Vec<(BigInt, &crate::polyring::Monomial)> = {
        let lcm = g
            .terms()
            .iter()
            .fold(BigInt::one(), |l, (c, _)| l.lcm(c.denom()));
        g.terms()
            .iter()
            .map(|(c, m)| (c.numer() * (&lcm / c.denom()), m))
            .collect()
    };

    let mut rng = seeded_rng(seed);
    let mut m_step: u64 = 0;
    let budget: u64 = 200_000;
    for attempt in 1..=max_attempts {
        // Next prime q = m * product + 1.
        let q = loop {
            m_step += 1;
            if m_step > budget {
                return Err(Error::SearchExhausted(format!(
                    "no prime q = m*{product}+1 with m <= {budget}"
                )));
            }
            let Some(candidate) = m_step
                .checked_mul(product)
                .and_then(|v| v.checked_add(1))
            else {
                return Err(Error::SearchExhausted(
                    "prime search exceeded the u64 range".into(),
                ));
            };
            if is_prime_u64(candidate) {
                break candidate;
            }
        };
        // Realize an order-p element for every distinct prime order:
        // h^((q-1)/p) has order dividing p, so any value other than 1 has
        // order exactly p.
        let mut assigned: BTreeMap<u64, u64> = BTreeMap::new();
        for &p in &distinct {
            let alpha = loop {
                let h = rng.random_range(2..q);
                let a = powmod(h, (q - 1) / p, q);
                if a != 1 {
                    break a;
                }
            };
            debug_assert_eq!(powmod(alpha, p, q), 1);
            assigned.insert(p, alpha);
        }
        let values: Vec<u64> = roots
            .iter()
            .map(|r| {
                let alpha = assigned[&r.prime];
                let v = powmod(alpha, r.exponent, q);
                if r.real_part {
                    (v + powmod(alpha, r.prime - r.exponent, q)) % q
                } else {
                    v
                }
            })
            .collect();
        let mut residue: u64 = 0;
        let qi = BigInt::from(q);
        for (c, m) in &cleared {
            let c_mod = c.mod_floor(&qi).to_u64().expect("residue fits u64");
            let mut term = c_mod;
            for (var, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    term = mulmod(term, powmod(values[var], e as u64, q), q);
                }
            }
            residue = (residue + term) % q;
        }
        if residue != 0 {
            return Ok(CertifyOutcome::Certified(NonvanishingCertificate {
                modulus: q,
                roots: assigned,
                residue,
                attempts: attempt,
            }));
        }
    }
    Ok(CertifyOutcome::Inconclusive {
        attempts: max_attempts,
    })
}

/// Exact zero test for evaluations involving at most two distinct prime
/// orders, via arithmetic in the group algebra Q[u, v]/(u^p - 1, v^q - 1)
/// followed by reduction to the tensor power basis (exponents <= p-2, q-2).
/// This is the independent oracle the certificate tests compare against.
pub fn exact_eval_is_zero(g: &Polynomial, roots: &[RootEntry]) -> Result<bool> {
    if roots.len() != g.registry().len() {
        return Err(Error::Registry(format!(
            "{} roots for a registry of {}",
            roots.len(),
            g.registry().len()
        )));
    }
    let mut distinct: Vec<u64> = roots.iter().map(|r| r.prime).collect();
    distinct.sort_unstable();
    distinct.dedup();
    if distinct.len() > 2 {
        return Err(Error::Argument(
            "exact evaluation supports at most two distinct prime orders".into(),
        ));
    }
    let p = *distinct.first().unwrap_or(&1) as usize;
    let q = *distinct.get(1).unwrap_or(&1) as usize;

    // Grid of coefficients of u^a v^b, cyclic in both axes.
    let zero_grid = || vec![vec![Rational::zero(); q]; p];
    let mul = |x: &Vec<Vec<Rational>>, y: &Vec<Vec<Rational>>| {
        let mut out = zero_grid();
        for (a1, row1) in x.iter().enumerate() {
            for (b1, c1) in row1.iter().enumerate() {
                if c1.is_zero() {
                    continue;
                }
                for (a2, row2) in y.iter().enumerate() {
                    for (b2, c2) in row2.iter().enumerate() {
                        if c2.is_zero() {
                            continue;
                        }
                        let t = &out[(a1 + a2) % p][(b1 + b2) % q] + &(c1 * c2);
                        out[(a1 + a2) % p][(b1 + b2) % q] = t;
                    }
                }
            }
        }
        out
    };
    // Value of one registry variable as a grid element.
    let entry_grid = |r: &RootEntry| {
        let axis_p = r.prime as usize == p;
        let mut grid = zero_grid();
        let e = r.exponent as usize;
        let order = r.prime as usize;
        let mut bump = |exp: usize| {
            let (a, b) = if axis_p { (exp, 0) } else { (0, exp) };
            let t = &grid[a][b] + &Rational::one();
            grid[a][b] = t;
        };
        bump(e);
        if r.real_part {
            bump(order - e);
        }
        grid
    };

    let mut acc = zero_grid();
    for (c, m) in g.terms() {
        let mut term = zero_grid();
        term[0][0] = c.clone();
        for (var, &e) in m.exps().iter().enumerate() {
            for _ in 0..e {
                term = mul(&term, &entry_grid(&roots[var]));
            }
        }
        for a in 0..p {
            for b in 0..q {
                let t = &acc[a][b] + &term[a][b];
                acc[a][b] = t;
            }
        }
    }
    // Reduce u^(p-1) = -(1 + u + ... + u^(p-2)), then likewise for v. The
    // surviving exponents form a basis, so zero there means zero.
    if p > 1 {
        let (body, top_row) = acc.split_at_mut(p - 1);
        for (b, top) in top_row[0].iter_mut().enumerate() {
            if !top.is_zero() {
                for row in body.iter_mut() {
                    let t = &row[b] - &*top;
                    row[b] = t;
                }
                *top = Rational::zero();
            }
        }
    }
    if q > 1 {
        for row in acc.iter_mut() {
            let top = row[q - 1].clone();
            if !top.is_zero() {
                for item in row.iter_mut().take(q - 1) {
                    *item -= &top;
                }
                row[q - 1] = Rational::zero();
            }
        }
    }
    Ok(acc.iter().flatten().all(Rational::is_zero))
}

/// Report of the randomized low-degree nonvanishing suite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonvanishingSuiteReport {
    pub trials: usize,
    pub certified: usize,
    /// Texts of any polynomials that stayed inconclusive (expected empty
    /// under the degree precondition).
    pub failures: Vec<String>,
}

/// Draw `trials` random nonzero polynomials of total degree < `degree_bound`
/// in one variable per prime, evaluate each at the corresponding primitive
/// roots, and certify nonvanishing. Precondition: `degree_bound < min(p) - 1`,
/// which makes every such value genuinely nonzero (the involved monomials
/// stay inside the cyclotomic power basis); rejecting the sharp case is the
/// point of the precondition, since e.g. 1 + x + x^2 + x^3 + x^4 does vanish
/// at a fifth root.
pub fn low_degree_nonvanishing_suite(
    primes: &[u64],
    degree_bound: u32,
    trials: usize,
    seed: u64,
) -> Result<NonvanishingSuiteReport> {
    if primes.is_empty() {
        return Err(Error::Argument("at least one prime is required".into()));
    }
    if degree_bound == 0 {
        return Err(Error::Argument("degree_bound must be positive".into()));
    }
    let mut distinct = primes.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    if distinct.len() != primes.len() {
        return Err(Error::Argument("primes must be distinct".into()));
    }
    for &p in primes {
        if !is_prime_u64(p) {
            return Err(Error::Argument(format!("{p} is not prime")));
        }
    }
    let min_p = *distinct.first().expect("nonempty");
    if u64::from(degree_bound) >= min_p - 1 {
        return Err(Error::Argument(format!(
            "degree_bound must be below min(p) - 1 = {}, got {degree_bound}",
            min_p - 1
        )));
    }
    let max_degree = degree_bound - 1;
    let registry = crate::polyring::VarRegistry::new(
        (1..=primes.len()).map(|i| format!("y{i}")),
    )?;
    let roots: Vec<RootEntry> = primes
        .iter()
        .map(|&p| RootEntry::new(p, 1, false))
        .collect::<Result<Vec<_>>>()?;
    let mut rng = seeded_rng(seed);
    let mut certified = 0;
    let mut failures = Vec::new();
    for t in 0..trials {
        let g = loop {
            let n_terms = rng.random_range(1..=4);
            let terms: Vec<(Rational, crate::polyring::Monomial)> = (0..n_terms)
                .map(|_| {
                    let c = Rational::from_integer(rng.random_range(-9i64..=9).into());
                    // Rejection-sample exponents until the total degree fits.
                    let exps: Vec<u32> = loop {
                        let e: Vec<u32> = (0..primes.len())
                            .map(|_| rng.random_range(0..=max_degree))
                            .collect();
                        if e.iter().sum::<u32>() <= max_degree {
                            break e;
                        }
                    };
                    (c, crate::polyring::Monomial::from_exps(exps))
                })
                .collect();
            let g = Polynomial::from_terms(
                std::sync::Arc::clone(&registry),
                crate::polyring::MonomialOrder::Lex,
                terms,
            )?;
            if !g.is_zero() {
                break g;
            }
        };
        let outcome = certify_nonzero(&g, &roots, 8, seed.wrapping_add(1 + t as u64))?;
        if outcome.is_certified() {
            certified += 1;
        } else {
            failures.push(g.to_string());
        }
    }
    Ok(NonvanishingSuiteReport {
        trials,
        certified,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{parse_polynomial, MonomialOrder, VarRegistry};
    use std::sync::Arc;

    #[test]
    fn primality_known_cases() {
        for p in [2u64, 3, 61, 2_147_483_647, 2u64.pow(61) - 1, 18_446_744_073_709_551_557] {
            assert!(is_prime_u64(p), "{p} is prime");
        }
        // 561 is Carmichael; 3215031751 fools bases {2,3,5,7}.
        for c in [0u64, 1, 561, 3_215_031_751, 2u64.pow(61), 18_446_744_073_709_551_615] {
            assert!(!is_prime_u64(c), "{c} is composite");
        }
        assert_eq!(
            first_primes_at_least(7, 9),
            vec![7, 11, 13, 17, 19, 23, 29, 31, 37]
        );
        assert_eq!(first_primes_at_least(0, 2), vec![2, 3]);
    }

    #[test]
    fn order_bounds_exact_values() {
        let full = delta_full(3).unwrap();
        assert_eq!(full.to_string(), "3^36");
        assert_eq!(full.value.to_string(), "150094635296999121");
        let reduced = delta_reduced(3).unwrap();
        assert_eq!(reduced.to_string(), "2*3^18");
        assert_eq!(reduced.value.to_string(), "774840978");
        assert!(delta_full(0).is_err());
    }

    #[test]
    fn degree_bounds_exact_values() {
        let reduced = elimination_degree_bound(3, 1, BoundVariant::Reduced).unwrap();
        assert_eq!(reduced.to_string(), "387440172");
        assert_eq!(reduced, BigUint::from(19683u64) * BigUint::from(19684u64));
        let full = elimination_degree_bound(3, 1, BoundVariant::Full).unwrap();
        assert_eq!(full, BigUint::from(531441u64) * BigUint::from(531442u64));
        assert!(elimination_degree_bound(3, 3, BoundVariant::Full).is_err());
        // The degree bound sits strictly below the sufficient order.
        for (n, r) in [(3usize, 1usize), (4, 2)] {
            let rep = bounds_report(n, r).unwrap();
            assert!(rep.full_below_delta && rep.reduced_below_delta);
        }
    }

    #[test]
    fn root_tokens_round_trip() {
        for (token, canonical) in [
            ("zeta(7)", "zeta(7)"),
            ("zeta(7)^3", "zeta(7)^3"),
            ("rezeta(11)^2", "rezeta(11)^2"),
            ("rezeta(5)", "rezeta(5)"),
        ] {
            let e = RootEntry::parse(token).unwrap();
            assert_eq!(e.token(), canonical);
        }
        for bad in ["zeta(4)", "zeta(7)^0", "zeta(7)^7", "zeta7", "eta(7)", "zeta(7)^x"] {
            assert!(RootEntry::parse(bad).is_err(), "accepted {bad:?}");
        }
    }

    #[test]
    fn root_matrix_validation_and_json() {
        let m = build_root_matrix(2, &[5, 7, 11, 13], false).unwrap();
        assert_eq!(m.entry(1, 0).prime, 11);
        let j = m.to_json();
        assert_eq!(j.entries[0], vec!["zeta(5)", "zeta(7)"]);
        assert_eq!(RootOfUnityMatrix::from_json(&j).unwrap(), m);
        assert!(build_root_matrix(2, &[5, 7, 11], false).is_err());
        assert!(build_root_matrix(2, &[5, 7, 11, 5], false).is_err());
        assert!(build_root_matrix(2, &[5, 7, 11, 12], false).is_err());
    }

    fn one_var() -> Arc<VarRegistry> {
        VarRegistry::new(["x"]).unwrap()
    }

    #[test]
    fn exact_evaluator_on_known_values() {
        let reg = one_var();
        let phi5 = parse_polynomial(&reg, MonomialOrder::Lex, "x^4 + x^3 + x^2 + x + 1").unwrap();
        let root5 = [RootEntry::new(5, 1, false).unwrap()];
        assert!(exact_eval_is_zero(&phi5, &root5).unwrap());
        let one_plus = parse_polynomial(&reg, MonomialOrder::Lex, "x + 1").unwrap();
        assert!(!exact_eval_is_zero(&one_plus, &root5).unwrap());
        // Real-part entries: 2 + rezeta(5) + rezeta(5)^2 = 2 + (sum of all
        // nontrivial fifth roots) = 2 - 1 = 1, nonzero.
        let re = [RootEntry::new(5, 1, true).unwrap()];
        let g = parse_polynomial(&reg, MonomialOrder::Lex, "x + 2").unwrap();
        assert!(!exact_eval_is_zero(&g, &re).unwrap());
        let two = VarRegistry::new(["x", "y"]).unwrap();
        // (x - 1)(y + 1) at (zeta(5), zeta(7)) is nonzero.
        let h = parse_polynomial(&two, MonomialOrder::Lex, "x*y + x - y - 1").unwrap();
        let roots57 = [
            RootEntry::new(5, 1, false).unwrap(),
            RootEntry::new(7, 1, false).unwrap(),
        ];
        assert!(!exact_eval_is_zero(&h, &roots57).unwrap());
        // Phi_5(x) * y vanishes regardless of y.
        let z = parse_polynomial(
            &two,
            MonomialOrder::Lex,
            "x^4*y + x^3*y + x^2*y + x*y + y",
        )
        .unwrap();
        assert!(exact_eval_is_zero(&z, &roots57).unwrap());
        // 2 + rezeta(5) + rezeta(5)^2: both real-part entries of the same
        // prime, distinct exponents.
        let rr = [
            RootEntry::new(5, 1, true).unwrap(),
            RootEntry::new(5, 2, true).unwrap(),
        ];
        let s = parse_polynomial(&two, MonomialOrder::Lex, "x + y + 2").unwrap();
        assert!(!exact_eval_is_zero(&s, &rr).unwrap());
        let s1 = parse_polynomial(&two, MonomialOrder::Lex, "x + y + 1").unwrap();
        assert!(exact_eval_is_zero(&s1, &rr).unwrap());
        // Three distinct primes are out of scope for the exact route.
        let three = VarRegistry::new(["x", "y", "z"]).unwrap();
        let t = parse_polynomial(&three, MonomialOrder::Lex, "x + y + z").unwrap();
        let roots3 = [
            RootEntry::new(5, 1, false).unwrap(),
            RootEntry::new(7, 1, false).unwrap(),
            RootEntry::new(11, 1, false).unwrap(),
        ];
        assert!(exact_eval_is_zero(&t, &roots3).is_err());
    }

    #[test]
    fn certificates_are_sound_against_the_exact_oracle() {
        let reg = one_var();
        let phi5 = parse_polynomial(&reg, MonomialOrder::Lex, "x^4 + x^3 + x^2 + x + 1").unwrap();
        let root5 = [RootEntry::new(5, 1, false).unwrap()];
        match certify_nonzero(&phi5, &root5, 4, 1).unwrap() {
            CertifyOutcome::Inconclusive { attempts } => assert_eq!(attempts, 4),
            CertifyOutcome::Certified(c) => panic!("unsound certificate {c:?}"),
        }
        let nz = parse_polynomial(&reg, MonomialOrder::Lex, "x + 1").unwrap();
        match certify_nonzero(&nz, &root5, 4, 1).unwrap() {
            CertifyOutcome::Certified(c) => {
                assert_ne!(c.residue, 0);
                assert_eq!(c.modulus % 5, 1);
                let alpha = c.roots[&5];
                assert_eq!(powmod(alpha, 5, c.modulus), 1);
                assert_ne!(alpha, 1);
            }
            CertifyOutcome::Inconclusive { .. } => panic!("x + 1 at zeta(5) is nonzero"),
        }
        // Random two-prime agreement: certified implies exact-nonzero, and
        // exact-zero implies inconclusive.
        let two = VarRegistry::new(["x", "y"]).unwrap();
        let roots57 = [
            RootEntry::new(5, 1, false).unwrap(),
            RootEntry::new(7, 1, false).unwrap(),
        ];
        let mut rng = seeded_rng(99);
        for trial in 0..30u64 {
            let terms: Vec<(Rational, crate::polyring::Monomial)> = (0..rng.random_range(1..=3))
                .map(|_| {
                    (
                        Rational::from_integer(rng.random_range(-4i64..=4).into()),
                        crate::polyring::Monomial::from_exps(vec![
                            rng.random_range(0..6),
                            rng.random_range(0..8),
                        ]),
                    )
                })
                .collect();
            let g = Polynomial::from_terms(Arc::clone(&two), MonomialOrder::Lex, terms).unwrap();
            let zero = exact_eval_is_zero(&g, &roots57).unwrap();
            let cert = certify_nonzero(&g, &roots57, 6, 1000 + trial).unwrap();
            if cert.is_certified() {
                assert!(!zero, "certified a zero value: {g}");
            }
            if !zero {
                assert!(cert.is_certified(), "failed to certify nonzero {g}");
            }
        }
    }

    #[test]
    fn rational_coefficients_are_cleared_before_reduction() {
        let reg = one_var();
        let g = parse_polynomial(&reg, MonomialOrder::Lex, "1/2*x + 1/3").unwrap();
        let root5 = [RootEntry::new(5, 1, false).unwrap()];
        assert!(certify_nonzero(&g, &root5, 4, 2).unwrap().is_certified());
        assert!(!exact_eval_is_zero(&g, &root5).unwrap());
    }

    #[test]
    fn suite_certifies_low_degree_draws_and_rejects_sharp_degrees() {
        let report = low_degree_nonvanishing_suite(&[5, 7], 3, 25, 123).unwrap();
        assert_eq!(report.trials, 25);
        assert_eq!(report.certified, 25);
        assert!(report.failures.is_empty());
        // Admitting degree 4 (bound 5) would allow 1 + x + x^2 + x^3 + x^4,
        // which vanishes at a fifth root; the precondition rejects it.
        assert!(matches!(
            low_degree_nonvanishing_suite(&[5, 7], 5, 1, 0),
            Err(Error::Argument(_))
        ));
        assert!(low_degree_nonvanishing_suite(&[5, 7], 4, 1, 0).is_err());
        assert!(low_degree_nonvanishing_suite(&[5, 7], 0, 1, 0).is_err());
        assert!(low_degree_nonvanishing_suite(&[5, 5], 2, 1, 0).is_err());
        assert!(low_degree_nonvanishing_suite(&[6], 2, 1, 0).is_err());
        assert!(low_degree_nonvanishing_suite(&[], 2, 1, 0).is_err());
    }

    #[test]
    fn certify_validates_inputs() {
        let reg = one_var();
        let g = parse_polynomial(&reg, MonomialOrder::Lex, "x + 1").unwrap();
        assert!(certify_nonzero(&g, &[], 4, 0).is_err());
        let root5 = [RootEntry::new(5, 1, false).unwrap()];
        assert!(certify_nonzero(&g, &root5, 0, 0).is_err());
    }
}
