//! Crate-wide error type. One enum; callers match on the variant.

use std::fmt;

/// Partial progress snapshot attached to a resource-cap abort, so a stuck
/// Groebner run is diagnosable rather than a bare failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResourceDiag {
    /// What was running when the cap tripped (e.g. "buchberger", "reduction").
    pub stage: String,
    /// Basis elements accumulated so far.
    pub basis_len: usize,
    /// S-pairs still queued.
    pub pending_pairs: usize,
    /// Term count of the polynomial that tripped the cap (0 if the basis cap
    /// tripped instead).
    pub term_count: usize,
    /// Cap on basis length that was in force.
    pub max_basis_len: usize,
    /// Cap on per-polynomial term count that was in force.
    pub max_terms: usize,
}

impl fmt::Display for ResourceDiag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: basis {} (cap {}), pending pairs {}, offending term count {} (cap {})",
            self.stage,
            self.basis_len,
            self.max_basis_len,
            self.pending_pairs,
            self.term_count,
            self.max_terms
        )
    }
}

#[derive(Debug, Clone, thiserror::Error, PartialEq, Eq)]
pub enum Error {
    /// Operands belong to different variable registries.
    #[error("registry error: {0}")]
    Registry(String),

    /// An argument violates a documented precondition.
    #[error("invalid argument: {0}")]
    Argument(String),

    /// A support pattern is malformed or out of range.
    #[error("invalid pattern: {0}")]
    Pattern(String),

    /// Text that should denote a polynomial, rational, or matrix does not.
    #[error("parse error: {0}")]
    Parse(String),

    /// A computation exceeded its configured caps; diagnostics attached.
    #[error("resource cap exceeded: {0}")]
    ResourceExceeded(ResourceDiag),

    /// A randomized search ran out of budget (e.g. no suitable prime found).
    #[error("search exhausted: {0}")]
    SearchExhausted(String),
}

pub type Result<T> = std::result::Result<T, Error>;
