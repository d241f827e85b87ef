use num_rational::BigRational;
use num_traits::One;

use super::{check_standardizable, tq, DispatchCase, ZetaResult};
use crate::genfun::{four_divides, sigma};
use crate::padic::{Exact, RingElem};
use crate::quadform::{JordanForm, Norm, UnimodularClass};
use crate::ratfunc::{igr, q_pow, Poly, RationalFunction};
use crate::{Error, Result};

fn sgn(e: i64) -> BigRational {
    BigRational::from_integer(e.into())
}

/// `(-1)^Tr(x)`.
fn trace_sign(x: &Exact) -> Result<i64> {
    Ok(if x.to_ring(1)?.trace_mod2() == 0 { 1 } else { -1 })
}

fn pow(x: &Exact, e: u64) -> Exact {
    (0..e).fold(Exact::one(x.field()), |acc, _| &acc * x)
}

fn exact_pair(a: &RingElem, b: &RingElem) -> (Exact, Exact) {
    (Exact::from_ring(a), Exact::from_ring(b))
}

/// `phi = (-1)^Tr((c/2) (y^q + y))`, `y = (a+b)/(2c)`.
fn phi(a: &RingElem, b: &RingElem, c: &RingElem) -> Result<i64> {
    let (a, b) = exact_pair(a, b);
    let c = Exact::from_ring(c);
    let two = Exact::from_int(a.field(), 2);
    let y = (&a + &b).checked_div(&(&two * &c))?;
    let q = a.field().q();
    trace_sign(&(&c.checked_div(&two)? * &(&pow(&y, q) + &y)))
}

/// `psi = (-1)^Tr((c/2) (((c+d)/2)^q + (a+b)/(2c)))`.
fn psi(a: &RingElem, b: &RingElem, c: &RingElem, d: &RingElem) -> Result<i64> {
    let (a, b) = exact_pair(a, b);
    let (c, d) = exact_pair(c, d);
    let two = Exact::from_int(a.field(), 2);
    let y = (&a + &b).checked_div(&(&two * &c))?;
    let w = (&c + &d).checked_div(&two)?;
    let q = a.field().q();
    trace_sign(&(&c.checked_div(&two)? * &(&pow(&w, q) + &y)))
}

fn not_r(q: &UnimodularClass) -> bool {
    q.norm() != Norm::R
}

/// `I(Q0, Q1, Q2) = Ig(H_Q0(z) G_Q1(z^2) G_Q2(z^4))` over an unramified
/// dyadic ring, one closed form per shape of `Q0` and norms of `Q1, Q2`.
pub fn table_violet(q0: &UnimodularClass, q1: &UnimodularClass, q2: &UnimodularClass) -> Result<RationalFunction> {
    let field = q0.field();
    if field.p() != 2 || q1.field() != field || q2.field() != field {
        return Err(Error::Unsupported("the dyadic table needs p = 2 and a common ring".into()));
    }
    let q = field.q();
    let ig = igr(q);
    let r0 = q0.rank();
    let r1 = q1.rank();
    let s0 = sgn(q0.plane_sign().into());
    let s1 = sgn(q1.plane_sign().into());
    let t = |d: usize| RationalFunction::monomial(BigRational::one(), d);
    let one = RationalFunction::one();
    // t^2 - t and t^3 - t^2
    let t21 = &t(2) - &t(1);
    let t32 = &t(3) - &t(2);
    let qp = |e: u32| q_pow(q, -i64::from(e));
    let base_t = &one - &tq(q, 1, r0);
    let base_t2 = &one - &tq(q, 2, r0);
    let sq0 = q0.square_coeffs();
    let sq1 = q1.square_coeffs();
    let value = match sq0.len() {
        0 => {
            if not_r(q1) {
                let front = BigRational::one() - &s0 * qp(r0 / 2);
                (&(&t(1) + &t(2).scale(&(&s0 * qp(r0 / 2)))) * &ig).scale(&front)
            } else {
                (&t(1) * &ig).scale(&(BigRational::one() - qp(r0)))
            }
        }
        1 => {
            if not_r(q1) {
                &(&base_t2 + &t21.scale(&(&s0 * qp(r0.div_ceil(2))))) * &ig
            } else {
                &base_t * &ig
            }
        }
        2 if four_divides(&[&sq0[0], &sq0[1]]) => {
            let sg = sgn(sigma(&sq0[0], &sq0[1])?);
            if not_r(q1) && not_r(q2) {
                let x = &(&base_t2 + &t21.scale(&(&s0 * qp(r0 / 2)))) + &t32.scale(&(&s1 * &sg * qp(r0 + r1 / 2)));
                &x * &ig
            } else if not_r(q1) {
                &(&base_t2 + &t21.scale(&(&s0 * qp(r0 / 2)))) * &ig
            } else if not_r(q2) && sq1.len() == 1 {
                &(&base_t + &t32.scale(&(&s1 * &sg * qp(r0 + r1.div_ceil(2))))) * &ig
            } else if not_r(q2) && four_divides(&[&sq0[0], &sq0[1], &sq1[0], &sq1[1]]) {
                &(&base_t + &t32.scale(&(&s1 * &sg * qp(r0 + r1 / 2)))) * &ig
            } else {
                &base_t * &ig
            }
        }
        2 => {
            let (a, b) = (&sq0[0], &sq0[1]);
            if not_r(q1) {
                &base_t2 * &ig
            } else if not_r(q2) && sq1.len() == 1 {
                let f = sgn(phi(a, b, &sq1[0])?);
                &(&base_t + &t32.scale(&(&s1 * &f * qp(r0 + r1.div_ceil(2))))) * &ig
            } else if not_r(q2) && four_divides(&[a, b, &sq1[0], &sq1[1]]) {
                let f = sgn(psi(a, b, &sq1[0], &sq1[1])?);
                &(&base_t + &t32.scale(&(&s1 * &f * qp(r0 + r1 / 2)))) * &ig
            } else {
                &base_t * &ig
            }
        }
        _ => return Err(Error::Invalid(format!("{q0} is not a canonical shape"))),
    };
    Ok(value)
}

/// Closed-form zeta function over an unramified dyadic ring for
/// `Q + L` with no constant term.
pub fn zeta_2unramified(j: &JordanForm) -> Result<ZetaResult> {
    let field = j.field();
    if field.p() != 2 {
        return Err(Error::Unsupported("zeta_2unramified needs p = 2".into()));
    }
    if !j.constant().is_zero() {
        return Err(Error::Unsupported("the dyadic closed form needs c = 0; use the engine".into()));
    }
    check_standardizable(j)?;
    let j = j.standardized();
    let q = field.q();
    let zero = UnimodularClass::zero(field);
    let sq = UnimodularClass::sq_int(field, 1)?;
    let term = |i: u32, p0: &UnimodularClass, p1: &UnimodularClass, p2: &UnimodularClass| -> Result<RationalFunction> {
        Ok(&tq(q, i, j.q_exp(i)) * &table_violet(p0, p1, p2)?)
    };
    let generic = |i: u32| -> Result<RationalFunction> { term(i, &j.fold(i)?, &j.fold(i + 1)?, &j.block(i + 2)) };
    let ig = igr(q);
    let (zf, case) = match j.lambda() {
        None => {
            let Some(top) = j.omega() else {
                return Ok(ZetaResult::degenerate(&j));
            };
            let w = top.max(1);
            let mut z = RationalFunction::zero();
            for i in 0..w - 1 {
                z = &z + &generic(i)?;
            }
            let (qa, qb) = (j.fold(w - 1)?, j.fold(w)?);
            let last = &term(w - 1, &qa, &qb, &zero)? + &term(w, &qb, &qa, &zero)?;
            let per = RationalFunction::one().checked_div(&RationalFunction::from_poly(
                &Poly::one() - &Poly::monomial(q_pow(q, -i64::from(j.rank())), 2),
            ))?;
            (&z + &(&last * &per), DispatchCase::PureForm { omega: w })
        }
        Some(0) => (ig, DispatchCase::LinearDominates { lambda: 0 }),
        Some(1) => {
            let z = &table_violet(&j.fold(0)?, &sq, &sq)? + &(&tq(q, 1, j.r_fold(0)) * &ig);
            (z, DispatchCase::LinearDominates { lambda: 1 })
        }
        Some(l) => {
            let mut z = RationalFunction::zero();
            for i in 0..l - 2 {
                z = &z + &generic(i)?;
            }
            z = &z + &term(l - 2, &j.fold(l - 2)?, &j.fold(l - 1)?, &sq)?;
            z = &z + &term(l - 1, &j.fold(l - 1)?, &sq, &sq)?;
            z = &z + &(&tq(q, l, j.q_exp(l)) * &ig);
            (z, DispatchCase::LinearDominates { lambda: l })
        }
    };
    Ok(ZetaResult::new(zf, &j, case))
}
