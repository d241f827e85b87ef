//! Arithmetic in `R/p^k` for the valuation ring `R` of an unramified
//! extension of `Q_p`, plus exact elements of the field itself.

mod exact;
mod fast;
mod field;
mod ring;

pub use exact::{v_p_rat, Exact};
pub use fast::ResidueRing;
pub use field::{FieldDesc, MAX_F};
pub use ring::{pick_nonsquare, pick_xi, teichmuller_set, trace_zero_set, ExtValuation, RingElem};
