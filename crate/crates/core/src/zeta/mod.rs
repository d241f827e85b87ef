//! Closed-form Igusa zeta functions `Z_f(t) = int |f|^s dx`, `t = q^-s`.
//!
//! A polynomial is reduced to a Jordan form `sum p^i Q_i + p^lambda x + c`
//! first. Odd `p` and dyadic `c = 0` go through the tables; everything else
//! through the coset engine.

mod dyadic;
mod engine;
mod odd;

use std::fmt;

pub use dyadic::{table_violet, zeta_2unramified};
pub use engine::zeta_engine;
pub use odd::{final_block, final_block_raw, poles_odd, table_gary, zeta_odd};

use num_rational::BigRational;

use crate::padic::FieldDesc;
use crate::quadform::{reduce_standard, JordanForm, QuadPoly};
use crate::ratfunc::{q_pow, DenominatorShape, RationalFunction};
use crate::{Error, Result};

/// Which branch of the evaluation produced the result.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DispatchCase {
    /// `f` is identically zero; `Z` is reported as 0.
    ZeroPolynomial,
    /// No linear part, no constant.
    PureForm { omega: u32 },
    /// The linear part absorbs the constant: `v(c) >= lambda`.
    LinearDominates { lambda: u32 },
    /// `v(c) = kappa` below `lambda`, or no linear part.
    ConstantDominates { lambda: Option<u32>, kappa: u32 },
}

impl fmt::Display for DispatchCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DispatchCase::ZeroPolynomial => write!(f, "zero polynomial"),
            DispatchCase::PureForm { omega } => write!(f, "pure form (omega = {omega})"),
            DispatchCase::LinearDominates { lambda } => write!(f, "linear term (lambda = {lambda})"),
            DispatchCase::ConstantDominates { lambda: Some(l), kappa } => {
                write!(f, "constant term (kappa = {kappa} < lambda = {l})")
            }
            DispatchCase::ConstantDominates { lambda: None, kappa } => {
                write!(f, "constant term (kappa = {kappa}, no linear part)")
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct ZetaResult {
    pub zf: RationalFunction,
    pub shape: DenominatorShape,
    pub field: FieldDesc,
    pub form: JordanForm,
    pub case: DispatchCase,
}

impl ZetaResult {
    fn new(zf: RationalFunction, form: &JordanForm, case: DispatchCase) -> Self {
        let field = form.field().clone();
        let shape = DenominatorShape::recognize(zf.den(), field.q(), form.rank());
        ZetaResult { zf, shape, field, form: form.clone(), case }
    }

    fn degenerate(form: &JordanForm) -> Self {
        Self::new(RationalFunction::zero(), form, DispatchCase::ZeroPolynomial)
    }

    pub fn is_degenerate(&self) -> bool {
        self.case == DispatchCase::ZeroPolynomial
    }
}

/// `t^i / q^e`.
pub(crate) fn tq(q: u64, i: u32, e: u32) -> RationalFunction {
    RationalFunction::monomial(q_pow(q, -i64::from(e)), i as usize)
}

fn check_standardizable(j: &JordanForm) -> Result<()> {
    if !j.constant().is_integral() {
        return Err(Error::Invalid("constant must be integral".into()));
    }
    Ok(())
}

/// Zeta function of a Jordan form, dispatched by residue characteristic.
pub fn zeta_jordan(j: &JordanForm) -> Result<ZetaResult> {
    if j.field().p() != 2 {
        zeta_odd(j)
    } else if j.constant().is_zero() {
        zeta_2unramified(j)
    } else {
        zeta_engine(j)
    }
}

/// Zeta function of a quadratic polynomial: reduce, then evaluate.
pub fn zeta(f: &QuadPoly) -> Result<ZetaResult> {
    let red = reduce_standard(f)?;
    zeta_jordan(&red.form)
}

/// `Z(1)`-style sanity value: the total volume `Z(t = 1)`, which is 1 for
/// every nonzero polynomial.
pub fn total_volume(z: &RationalFunction) -> Result<BigRational> {
    z.eval(&BigRational::from_integer(1.into()))
}
