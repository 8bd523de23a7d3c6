//! The sparse polynomial type and its ring, evaluation, and calculus ops.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{require_same_registry, Monomial, MonomialOrder, Rational, VarRegistry};
use crate::error::{Error, Result};

/// A polynomial: terms sorted strictly descending under `order`, no zero
/// coefficients, no duplicate monomials. The zero polynomial has no terms.
#[derive(Debug, Clone)]
pub struct Polynomial {
    registry: Arc<VarRegistry>,
    order: MonomialOrder,
    terms: Vec<(Rational, Monomial)>,
}

impl Polynomial {
    pub fn zero(registry: Arc<VarRegistry>, order: MonomialOrder) -> Self {
        Polynomial {
            registry,
            order,
            terms: Vec::new(),
        }
    }

    pub fn constant(registry: Arc<VarRegistry>, order: MonomialOrder, c: Rational) -> Self {
        let n = registry.len();
        let terms = if c.is_zero() {
            Vec::new()
        } else {
            vec![(c, Monomial::one(n))]
        };
        Polynomial {
            registry,
            order,
            terms,
        }
    }

    /// The monomial `var` (by registry index) with coefficient 1.
    pub fn variable(registry: Arc<VarRegistry>, order: MonomialOrder, var: usize) -> Result<Self> {
        if var >= registry.len() {
            return Err(Error::Argument(format!(
                "variable index {var} out of range for registry of {}",
                registry.len()
            )));
        }
        let n = registry.len();
        Ok(Polynomial {
            registry,
            order,
            terms: vec![(Rational::one(), Monomial::var(n, var, 1))],
        })
    }

    /// Normalize an arbitrary term list: merge duplicate monomials, drop
    /// zeros, sort descending under `order`.
    pub fn from_terms(
        registry: Arc<VarRegistry>,
        order: MonomialOrder,
        terms: Vec<(Rational, Monomial)>,
    ) -> Result<Self> {
        let n = registry.len();
        for (_, m) in &terms {
            if m.n_vars() != n {
                return Err(Error::Registry(format!(
                    "monomial over {} variables in a registry of {}",
                    m.n_vars(),
                    n
                )));
            }
        }
        let mut acc: HashMap<Monomial, Rational> = HashMap::with_capacity(terms.len());
        for (c, m) in terms {
            match acc.entry(m) {
                std::collections::hash_map::Entry::Occupied(mut e) => {
                    let v = e.get_mut();
                    *v += c;
                    if v.is_zero() {
                        e.remove();
                    }
                }
                std::collections::hash_map::Entry::Vacant(e) => {
                    if !c.is_zero() {
                        e.insert(c);
                    }
                }
            }
        }
        let mut terms: Vec<(Rational, Monomial)> =
            acc.into_iter().map(|(m, c)| (c, m)).collect();
        terms.sort_by(|a, b| order.compare(&b.1, &a.1));
        Ok(Polynomial {
            registry,
            order,
            terms,
        })
    }

    pub fn registry(&self) -> &Arc<VarRegistry> {
        &self.registry
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    /// Terms, strictly descending under the active order.
    pub fn terms(&self) -> &[(Rational, Monomial)] {
        &self.terms
    }

    pub fn n_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() <= 1 && self.terms.first().is_none_or(|(_, m)| m.is_one())
    }

    /// The constant value when `self` is constant (zero polynomial => 0).
    pub fn constant_value(&self) -> Option<Rational> {
        if self.is_zero() {
            Some(Rational::zero())
        } else if self.is_constant() {
            Some(self.terms[0].0.clone())
        } else {
            None
        }
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.terms.first().map(|(c, _)| c)
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(_, m)| m)
    }

    /// Max total degree over terms; 0 for the zero polynomial.
    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(_, m)| m.degree()).max().unwrap_or(0)
    }

    /// Same polynomial re-sorted under `order`.
    pub fn with_order(&self, order: MonomialOrder) -> Polynomial {
        if order == self.order {
            return self.clone();
        }
        let mut terms = self.terms.clone();
        terms.sort_by(|a, b| order.compare(&b.1, &a.1));
        Polynomial {
            registry: Arc::clone(&self.registry),
            order,
            terms,
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        require_same_registry(&self.registry, &other.registry)?;
        let other = other.with_order(self.order);
        // Merge two descending term lists.
        let mut terms = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            match self.order.compare(&self.terms[i].1, &other.terms[j].1) {
                Ordering::Greater => {
                    terms.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    terms.push(other.terms[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = &self.terms[i].0 + &other.terms[j].0;
                    if !c.is_zero() {
                        terms.push((c, self.terms[i].1.clone()));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        terms.extend_from_slice(&self.terms[i..]);
        terms.extend(other.terms[j..].iter().cloned());
        Ok(Polynomial {
            registry: Arc::clone(&self.registry),
            order: self.order,
            terms,
        })
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.checked_add(&other.neg_ref())
    }

    pub fn neg_ref(&self) -> Polynomial {
        Polynomial {
            registry: Arc::clone(&self.registry),
            order: self.order,
            terms: self.terms.iter().map(|(c, m)| (-c, m.clone())).collect(),
        }
    }

    /// Multiply by the single term `c * m`. Order is preserved because every
    /// monomial order here is multiplicative.
    pub fn mul_term(&self, c: &Rational, m: &Monomial) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(Arc::clone(&self.registry), self.order);
        }
        Polynomial {
            registry: Arc::clone(&self.registry),
            order: self.order,
            terms: self
                .terms
                .iter()
                .map(|(tc, tm)| (tc * c, tm.mul(m)))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        self.mul_term(c, &Monomial::one(self.registry.len()))
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        require_same_registry(&self.registry, &other.registry)?;
        let mut acc: HashMap<Monomial, Rational> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ca, ma) in &self.terms {
            for (cb, mb) in &other.terms {
                let m = ma.mul(mb);
                let c = ca * cb;
                match acc.entry(m) {
                    std::collections::hash_map::Entry::Occupied(mut e) => {
                        let v = e.get_mut();
                        *v += c;
                        if v.is_zero() {
                            e.remove();
                        }
                    }
                    std::collections::hash_map::Entry::Vacant(e) => {
                        e.insert(c);
                    }
                }
            }
        }
        let mut terms: Vec<(Rational, Monomial)> =
            acc.into_iter().map(|(m, c)| (c, m)).collect();
        terms.sort_by(|a, b| self.order.compare(&b.1, &a.1));
        Ok(Polynomial {
            registry: Arc::clone(&self.registry),
            order: self.order,
            terms,
        })
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut out = Polynomial::constant(
            Arc::clone(&self.registry),
            self.order,
            Rational::one(),
        );
        for _ in 0..e {
            out = out.checked_mul(self).expect("same registry");
        }
        out
    }

    /// Divide by the leading coefficient; zero stays zero.
    pub fn monic(&self) -> Polynomial {
        match self.leading_coeff() {
            None => self.clone(),
            Some(lc) => {
                let inv = Rational::one() / lc;
                self.scale(&inv)
            }
        }
    }

    /// Integer-content-cleared form: scale by the lcm of coefficient
    /// denominators over the gcd of numerators, sign chosen so the leading
    /// coefficient is positive. Zero stays zero. Used for display in reports.
    pub fn primitive_integer_form(&self) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        let mut den_lcm = BigInt::one();
        let mut num_gcd = BigInt::zero();
        for (c, _) in &self.terms {
            den_lcm = den_lcm.lcm(c.denom());
            num_gcd = num_gcd.gcd(c.numer());
        }
        let mut factor = Rational::new(den_lcm, num_gcd);
        if self.terms[0].0.is_negative() != factor.is_negative() {
            factor = -factor;
        }
        self.scale(&factor)
    }

    /// Evaluate at one value per registry variable.
    pub fn evaluate(&self, values: &[Rational]) -> Result<Rational> {
        if values.len() != self.registry.len() {
            return Err(Error::Argument(format!(
                "expected {} values, got {}",
                self.registry.len(),
                values.len()
            )));
        }
        let mut total = Rational::zero();
        for (c, m) in &self.terms {
            let mut v = c.clone();
            for (var, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    v *= values[var].pow(e as i32);
                }
            }
            total += v;
        }
        Ok(total)
    }

    /// Formal partial derivative with respect to registry variable `var`.
    pub fn partial_derivative(&self, var: usize) -> Result<Polynomial> {
        if var >= self.registry.len() {
            return Err(Error::Argument(format!(
                "variable index {var} out of range for registry of {}",
                self.registry.len()
            )));
        }
        let mut terms = Vec::new();
        for (c, m) in &self.terms {
            let e = m.exp(var);
            if e > 0 {
                let mut exps = m.exps().to_vec();
                exps[var] = e - 1;
                terms.push((c * Rational::from_integer(BigInt::from(e)), Monomial::from_exps(exps)));
            }
        }
        Polynomial::from_terms(Arc::clone(&self.registry), self.order, terms)
    }

    /// Remove and return the leading term. Internal: reducers consume the
    /// head without re-sorting the tail.
    pub(crate) fn pop_leading_term(&mut self) -> Option<(Rational, Monomial)> {
        if self.terms.is_empty() {
            None
        } else {
            Some(self.terms.remove(0))
        }
    }

    /// Rebuild over `registry`, matching variables by name. Errors if a
    /// variable actually used by `self` is missing from the target.
    pub fn remap(&self, registry: &Arc<VarRegistry>, order: MonomialOrder) -> Result<Polynomial> {
        let map: Vec<Option<usize>> = (0..self.registry.len())
            .map(|i| registry.index_of(self.registry.name(i)))
            .collect();
        let n = registry.len();
        let mut terms = Vec::with_capacity(self.terms.len());
        for (c, m) in &self.terms {
            let mut exps = vec![0u32; n];
            for (var, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    match map[var] {
                        Some(t) => exps[t] += e,
                        None => {
                            return Err(Error::Registry(format!(
                                "variable {} not present in target registry",
                                self.registry.name(var)
                            )))
                        }
                    }
                }
            }
            terms.push((c.clone(), Monomial::from_exps(exps)));
        }
        Polynomial::from_terms(Arc::clone(registry), order, terms)
    }
}

/// Multivariate division with remainder: `f = sum q_i g_i + r` where no term
/// of `r` is divisible by any leading monomial of the divisors. Ties go to
/// the leftmost divisor, so the result is deterministic in divisor order.
pub fn divide(
    f: &Polynomial,
    divisors: &[Polynomial],
    order: MonomialOrder,
) -> Result<(Vec<Polynomial>, Polynomial)> {
    for g in divisors {
        require_same_registry(f.registry(), g.registry())?;
        if g.is_zero() {
            return Err(Error::Argument("division by the zero polynomial".into()));
        }
    }
    let f = f.with_order(order);
    let divisors: Vec<Polynomial> = divisors.iter().map(|g| g.with_order(order)).collect();
    let registry = Arc::clone(f.registry());
    let mut quotients = vec![Polynomial::zero(Arc::clone(&registry), order); divisors.len()];
    let mut remainder_terms: Vec<(Rational, Monomial)> = Vec::new();
    let mut p = f;
    'outer: while let (Some(lc), Some(lm)) = (p.leading_coeff(), p.leading_monomial()) {
        let (lc, lm) = (lc.clone(), lm.clone());
        for (gi, g) in divisors.iter().enumerate() {
            let glm = g.leading_monomial().expect("divisors are nonzero");
            if let Some(q_m) = glm.checked_div(&lm) {
                let q_c = &lc / g.leading_coeff().expect("divisors are nonzero");
                let t = Polynomial {
                    registry: Arc::clone(&registry),
                    order,
                    terms: vec![(q_c.clone(), q_m.clone())],
                };
                quotients[gi] = quotients[gi].checked_add(&t)?;
                p = p.checked_sub(&g.mul_term(&q_c, &q_m))?;
                continue 'outer;
            }
        }
        // No divisor matches: move the leading term to the remainder. Terms
        // arrive in strictly decreasing order, so pushing keeps it sorted.
        remainder_terms.push((lc, lm.clone()));
        p.terms.remove(0);
    }
    let remainder = Polynomial {
        registry,
        order,
        terms: remainder_terms,
    };
    Ok((quotients, remainder))
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        if !super::same_registry(&self.registry, &other.registry) {
            return false;
        }
        if self.order == other.order {
            return self.terms == other.terms;
        }
        let mut a = self.terms.clone();
        let mut b = other.terms.clone();
        a.sort_by(|x, y| x.1.cmp(&y.1));
        b.sort_by(|x, y| x.1.cmp(&y.1));
        a == b
    }
}

impl Eq for Polynomial {}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.neg_ref()
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("registry mismatch in +")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("registry mismatch in -")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("registry mismatch in *")
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::text::format_polynomial(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::parse_polynomial;

    fn reg() -> Arc<VarRegistry> {
        VarRegistry::new(["x", "y", "z"]).unwrap()
    }

    fn p(s: &str) -> Polynomial {
        parse_polynomial(&reg(), MonomialOrder::Lex, s).unwrap()
    }

    #[test]
    fn ring_ops_small_cases() {
        assert_eq!(&p("x + y") + &p("x - y"), p("2*x"));
        assert_eq!(&p("x + y") * &p("x - y"), p("x^2 - y^2"));
        assert_eq!(&p("x + 1") * &p("x + 1"), p("x^2 + 2*x + 1"));
        assert_eq!(&p("x") - &p("x"), p("0"));
        assert_eq!(p("x + 1").pow(3), p("x^3 + 3*x^2 + 3*x + 1"));
        assert_eq!((-&p("x - y")).to_string(), "-x + y");
    }

    #[test]
    fn registry_mismatch_is_an_error() {
        let other = VarRegistry::new(["a", "b"]).unwrap();
        let q = Polynomial::variable(other, MonomialOrder::Lex, 0).unwrap();
        assert!(matches!(
            p("x").checked_add(&q),
            Err(crate::error::Error::Registry(_))
        ));
    }

    #[test]
    fn textbook_division_example() {
        // x^2*y + x*y^2 + y^2 by [x*y - 1, y^2 - 1] under lex x > y > z.
        let f = p("x^2*y + x*y^2 + y^2");
        let g = [p("x*y - 1"), p("y^2 - 1")];
        let (q, r) = divide(&f, &g, MonomialOrder::Lex).unwrap();
        assert_eq!(q[0], p("x + y"));
        assert_eq!(q[1], p("1"));
        assert_eq!(r, p("x + y + 1"));
        // Swapping the divisors changes the outcome; the rule is leftmost-first.
        let g2 = [p("y^2 - 1"), p("x*y - 1")];
        let (q2, r2) = divide(&f, &g2, MonomialOrder::Lex).unwrap();
        assert_eq!(r2, p("2*x + 1"));
        assert_eq!(q2[0], p("x + 1"));
        assert_eq!(q2[1], p("x"));
    }

    #[test]
    fn division_recombines_and_leaves_irreducible_remainder() {
        let f = p("x^3*y - 2*x*y^2 + y*z + 4");
        let g = [p("x*y - z"), p("y^2 - 1"), p("z^2 - x")];
        let (q, r) = divide(&f, &g, MonomialOrder::Lex).unwrap();
        let mut back = r.clone();
        for (qi, gi) in q.iter().zip(&g) {
            back = &back + &(qi * gi);
        }
        assert_eq!(back, f);
        for (_, m) in r.terms() {
            for gi in &g {
                assert!(!gi.leading_monomial().unwrap().divides(m));
            }
        }
    }

    #[test]
    fn division_by_zero_is_an_error() {
        let z = Polynomial::zero(reg(), MonomialOrder::Lex);
        assert!(divide(&p("x"), &[z], MonomialOrder::Lex).is_err());
    }

    #[test]
    fn evaluate_and_derivative() {
        let f = p("x^2*y - 3/4*z + 1");
        let vals = [
            crate::polyring::parse_rational("2").unwrap(),
            crate::polyring::parse_rational("-1").unwrap(),
            crate::polyring::parse_rational("4").unwrap(),
        ];
        assert_eq!(f.evaluate(&vals).unwrap().to_string(), "-6");
        assert_eq!(f.partial_derivative(0).unwrap(), p("2*x*y"));
        assert_eq!(f.partial_derivative(1).unwrap(), p("x^2"));
        assert_eq!(f.partial_derivative(2).unwrap(), p("-3/4"));
        assert!(f.evaluate(&vals[..2]).is_err());
    }

    #[test]
    fn monic_and_primitive_forms() {
        let f = p("4*x^2 - 6*y");
        assert_eq!(f.monic(), p("x^2 - 3/2*y"));
        assert_eq!(f.primitive_integer_form(), p("2*x^2 - 3*y"));
        let g = p("-1/2*x + 1/3");
        assert_eq!(g.primitive_integer_form(), p("3*x - 2"));
        assert_eq!(g.primitive_integer_form().primitive_integer_form(), p("3*x - 2"));
        assert!(p("0").monic().is_zero());
    }

    #[test]
    fn order_change_preserves_identity() {
        let f = p("x + y^3 + z^2");
        let g = f.with_order(MonomialOrder::GrevLex);
        assert_eq!(g.to_string(), "y^3 + z^2 + x");
        assert_eq!(f, g);
        assert_eq!(g.with_order(MonomialOrder::Lex).to_string(), f.to_string());
    }

    #[test]
    fn remap_moves_between_registries_by_name() {
        let big = VarRegistry::new(["w", "x", "y", "z"]).unwrap();
        let f = p("x*y - z");
        let g = f.remap(&big, MonomialOrder::Lex).unwrap();
        assert_eq!(g.to_string(), "x*y - z");
        assert_eq!(g.registry().len(), 4);
        let back = g.remap(&reg(), MonomialOrder::Lex).unwrap();
        assert_eq!(back, f);
        // A used variable missing from the target is an error.
        let small = VarRegistry::new(["x", "y"]).unwrap();
        assert!(f.remap(&small, MonomialOrder::Lex).is_err());
        // An unused one is fine.
        assert!(p("x*y").remap(&small, MonomialOrder::Lex).is_ok());
    }

    #[test]
    fn constant_queries() {
        assert_eq!(p("0").constant_value().unwrap().to_string(), "0");
        assert_eq!(p("7/2").constant_value().unwrap().to_string(), "7/2");
        assert_eq!(p("x").constant_value(), None);
        assert!(p("5").is_constant());
        assert!(!p("x + 5").is_constant());
    }
}
