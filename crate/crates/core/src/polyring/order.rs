//! Monomials as dense exponent vectors, and the three term orders in use.

use std::cmp::Ordering;

/// Exponent vector over a fixed registry. Index `i` is the exponent of the
/// registry's `i`-th variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    /// The constant monomial `1` over `n_vars` variables.
    pub fn one(n_vars: usize) -> Self {
        Monomial {
            exps: vec![0; n_vars],
        }
    }

    /// `var^exp` over `n_vars` variables.
    pub fn var(n_vars: usize, var: usize, exp: u32) -> Self {
        let mut exps = vec![0; n_vars];
        exps[var] = exp;
        Monomial { exps }
    }

    pub fn from_exps(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn n_vars(&self) -> usize {
        self.exps.len()
    }

    pub fn exp(&self, var: usize) -> u32 {
        self.exps[var]
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, or `None` when `self` does not divide `other`.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        if self.divides(other) {
            Some(Monomial {
                exps: other
                    .exps
                    .iter()
                    .zip(&self.exps)
                    .map(|(b, a)| b - a)
                    .collect(),
            })
        } else {
            None
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| *a.max(b))
                .collect(),
        }
    }

    /// `true` iff the two monomials share no variable.
    pub fn coprime(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(&other.exps)
            .all(|(a, b)| *a == 0 || *b == 0)
    }
}

/// Term orders. All three are multiplicative well-orders.
///
/// `Block { split }` compares the first `split` registry variables
/// lexicographically, then the rest lexicographically; with the dropped
/// variables placed in the leading block it is the elimination order used by
/// [`crate::groebner::eliminate`]. It coincides with `Lex` on the full
/// vector but is kept as its own kind so elimination intent is explicit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    Lex,
    GrevLex,
    Block { split: usize },
}

impl MonomialOrder {
    /// Compare `a` and `b`; both must come from the same registry.
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        assert_eq!(a.exps.len(), b.exps.len(), "monomials from different registries");
        match *self {
            MonomialOrder::Lex => a.exps.cmp(&b.exps),
            MonomialOrder::GrevLex => {
                let (da, db) = (a.degree(), b.degree());
                if da != db {
                    return da.cmp(&db);
                }
                // Ties break by the LAST differing exponent, smaller wins.
                for (ea, eb) in a.exps.iter().zip(&b.exps).rev() {
                    if ea != eb {
                        return eb.cmp(ea);
                    }
                }
                Ordering::Equal
            }
            MonomialOrder::Block { split } => {
                let split = split.min(a.exps.len());
                a.exps[..split]
                    .cmp(&b.exps[..split])
                    .then_with(|| a.exps[split..].cmp(&b.exps[split..]))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(exps: &[u32]) -> Monomial {
        Monomial::from_exps(exps.to_vec())
    }

    #[test]
    fn lex_and_grevlex_disagree_where_expected() {
        // x^3 vs x*y^2 vs y^3 over (x, y).
        let x3 = m(&[3, 0]);
        let xy2 = m(&[1, 2]);
        let y3 = m(&[0, 3]);
        for ord in [MonomialOrder::Lex, MonomialOrder::GrevLex] {
            assert_eq!(ord.compare(&x3, &xy2), Ordering::Greater);
            assert_eq!(ord.compare(&xy2, &y3), Ordering::Greater);
        }
        // Degree dominates under grevlex only.
        let x = m(&[1, 0]);
        let y2 = m(&[0, 2]);
        assert_eq!(MonomialOrder::Lex.compare(&x, &y2), Ordering::Greater);
        assert_eq!(MonomialOrder::GrevLex.compare(&x, &y2), Ordering::Less);
    }

    #[test]
    fn grevlex_tie_breaks_from_the_tail() {
        // Same degree 2 over (x, y, z): xz vs y^2.
        let xz = m(&[1, 0, 1]);
        let y2 = m(&[0, 2, 0]);
        // Last differing exponent is z: xz has more z, so xz < y^2.
        assert_eq!(MonomialOrder::GrevLex.compare(&xz, &y2), Ordering::Less);
    }

    #[test]
    fn block_order_puts_leading_block_first() {
        // Block split 1 over (t, x): any positive t-power beats any x-power.
        let ord = MonomialOrder::Block { split: 1 };
        let t = m(&[1, 0]);
        let x9 = m(&[0, 9]);
        assert_eq!(ord.compare(&t, &x9), Ordering::Greater);
        assert_eq!(ord.compare(&m(&[1, 1]), &t), Ordering::Greater);
    }

    #[test]
    fn orders_are_multiplicative_and_bounded_below_by_one() {
        let orders = [
            MonomialOrder::Lex,
            MonomialOrder::GrevLex,
            MonomialOrder::Block { split: 2 },
        ];
        // Deterministic small sweep over exponent vectors of length 3.
        let mut monos = Vec::new();
        for a in 0..3u32 {
            for b in 0..3u32 {
                for c in 0..3u32 {
                    monos.push(m(&[a, b, c]));
                }
            }
        }
        let one = Monomial::one(3);
        for ord in orders {
            for u in &monos {
                if !u.is_one() {
                    assert_eq!(ord.compare(u, &one), Ordering::Greater);
                }
                for v in &monos {
                    let rel = ord.compare(u, v);
                    for w in &monos {
                        assert_eq!(ord.compare(&u.mul(w), &v.mul(w)), rel);
                    }
                }
            }
        }
    }

    #[test]
    fn division_and_lcm_agree() {
        let a = m(&[2, 0, 1]);
        let b = m(&[1, 3, 0]);
        assert!(!a.divides(&b));
        let l = a.lcm(&b);
        assert_eq!(l.exps(), &[2, 3, 1]);
        assert_eq!(a.checked_div(&l).unwrap().exps(), &[0, 3, 0]);
        assert_eq!(b.checked_div(&l).unwrap().exps(), &[1, 0, 1]);
        assert!(a.checked_div(&b).is_none());
        assert!(!a.coprime(&b));
        assert!(m(&[1, 0, 0]).coprime(&m(&[0, 2, 1])));
    }
}
