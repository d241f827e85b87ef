//! Ground truth by counting.
//!
//! Nothing here uses the closed forms: values are enumerated over
//! `(R/p^k)^n`, and larger polynomials are split into blocks in disjoint
//! variables whose histograms are convolved.

mod histogram;
mod orbit;
mod series;

pub use histogram::{count_exhaustive, CompiledPoly, ValueHistogram, EXHAUSTIVE_GUARD};
pub use series::{segers_holds, verify, zero_masses, zeta_series_oracle, VerifyReport, VerifyStatus};
