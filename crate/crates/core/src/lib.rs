//! Igusa local zeta functions of quadratic polynomials over the valuation
//! ring of an unramified extension of `Q_p`.
//!
//! The crate is layered bottom-up:
//!
//! * [`padic`]: Galois-ring arithmetic in `R/p^k`, Teichmüller lifts, traces,
//!   square classes, and exact elements of the unramified number field.
//! * [`ratfunc`]: polynomials and rational functions in `t = q^-s`.
//! * [`genfun`]: generating functions of value distributions, both as finite
//!   combinations of coset terms `z^(a + p^j R)` and as level-`k` histograms.
//! * [`quadform`]: quadratic polynomials, Jordan splittings, classification of
//!   unimodular forms and reduction to standard form.
//! * [`zeta`]: closed-form zeta evaluators plus a generic engine built on
//!   [`genfun`].
//! * [`oracle`]: brute-force value counting used as ground truth.

// matrix code reads better with explicit indices
#![allow(clippy::needless_range_loop)]
pub mod error;
pub mod exec;
pub mod genfun;
pub mod oracle;
pub mod padic;
pub mod quadform;
pub mod ratfunc;
pub mod zeta;

pub use error::{Error, Result};
