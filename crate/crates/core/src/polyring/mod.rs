//! Sparse multivariate polynomials over exact rationals.
//!
//! A [`VarRegistry`] fixes the ambient variable list once; every [`Monomial`]
//! is a dense exponent vector of that length and every [`Polynomial`] carries
//! an `Arc` to its registry plus the [`MonomialOrder`] its term list is
//! sorted under. Mixing registries is an error, never a silent misalignment.

mod order;
mod poly;
mod text;

pub use order::{Monomial, MonomialOrder};
pub use poly::{divide, Polynomial};
pub use text::parse_polynomial;

use std::collections::HashMap;
use std::sync::Arc;

use num_traits::Signed;

use crate::error::{Error, Result};

/// Exact rational scalar. `Ratio` keeps the invariants this crate needs:
/// always gcd-reduced, denominator positive, heap-backed integers.
pub type Rational = num_rational::BigRational;

/// Parse a rational from `"n"` or `"n/d"` decimal text.
pub fn parse_rational(s: &str) -> Result<Rational> {
    s.trim()
        .parse::<Rational>()
        .map_err(|e| Error::Parse(format!("bad rational {s:?}: {e}")))
}

/// `true` iff `q` has denominator 1.
pub fn is_integer(q: &Rational) -> bool {
    num_traits::One::is_one(&q.denom().abs())
}

/// An ordered, immutable list of distinct variable names.
///
/// Registries are compared by name list, so two independently built
/// registries with the same names are interchangeable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarRegistry {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

impl VarRegistry {
    /// Build a registry; names must be nonempty, distinct, and free of the
    /// token characters `+ - * / ^` and whitespace.
    pub fn new<I, S>(names: I) -> Result<Arc<Self>>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let mut index = HashMap::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            if name.is_empty() {
                return Err(Error::Argument("empty variable name".into()));
            }
            if name
                .chars()
                .any(|c| c.is_whitespace() || "+-*/^()".contains(c))
                || name.chars().next().is_some_and(|c| c.is_ascii_digit())
            {
                return Err(Error::Argument(format!("invalid variable name {name:?}")));
            }
            if index.insert(name.clone(), i).is_some() {
                return Err(Error::Argument(format!("duplicate variable name {name:?}")));
            }
        }
        Ok(Arc::new(VarRegistry { names, index }))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }
}

/// `true` iff the two registries are interchangeable (same pointer or same
/// name list).
pub fn same_registry(a: &Arc<VarRegistry>, b: &Arc<VarRegistry>) -> bool {
    Arc::ptr_eq(a, b) || a.names == b.names
}

pub(crate) fn require_same_registry(a: &Arc<VarRegistry>, b: &Arc<VarRegistry>) -> Result<()> {
    if same_registry(a, b) {
        Ok(())
    } else {
        Err(Error::Registry(format!(
            "registry mismatch: [{}] vs [{}]",
            a.names().join(","),
            b.names().join(",")
        )))
    }
}
