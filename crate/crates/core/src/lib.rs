//! Exact-arithmetic toolkit for matrix rigidity over the rationals.
//!
//! The crate decides, with no floating point anywhere, questions of the form
//! "can this matrix be pushed to rank <= r by changing entries only at a
//! fixed support pattern", by building determinantal ideals, eliminating the
//! change variables with block-order Groebner bases, and certifying values of
//! the resulting elimination ideals. Layers, bottom up:
//!
//! * [`polyring`]: sparse multivariate polynomials over `BigRational`,
//!   monomial orders, division, lossless text round-trip.
//! * [`groebner`]: Buchberger with the normal selection strategy, reduced
//!   bases, block-order elimination, resource caps.
//! * [`detideals`]: rigidity matrices `X + T_pi`, minor ideals, the two
//!   elimination routes and their cross-check.
//! * [`exactla`]: exact rank (fraction-free and naive), rank-variety and
//!   parametrization samplers, Jacobian ranks at rational points.
//! * [`rigidity`]: exact rigidity by pattern enumeration, closure membership,
//!   max-rigidity certificates, worked example families.
//! * [`cyclo`]: root-of-unity matrices, finite-field nonvanishing
//!   certificates, and the order/degree bound calculators.
//! * [`verify`]: the end-to-end check suite behind `riglab verify-paper` and
//!   the acceptance tests.

// Dense linear algebra addresses rows and columns by index; iterator
// rewrites of those loops obscure which axis is being walked.
#![allow(clippy::needless_range_loop)]

pub mod cyclo;
pub mod detideals;
pub mod error;
pub mod exactla;
pub mod groebner;
pub mod polyring;
pub mod rigidity;
pub mod verify;

pub use error::{Error, ResourceDiag, Result};
