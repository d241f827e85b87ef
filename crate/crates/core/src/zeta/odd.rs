use num_rational::BigRational;
use num_traits::One;

use super::{check_standardizable, tq, DispatchCase, ZetaResult};
use crate::padic::{Exact, FieldDesc, RingElem};
use crate::quadform::{alpha, JordanForm, UnimodularClass};
use crate::ratfunc::{igr, q_pow, Poly, RationalFunction};
use crate::{Error, Result};

fn eta_of(x: &RingElem) -> Result<i64> {
    Ok(i64::from(x.reduce(1).eta()?))
}

fn signed_disc(field: &FieldDesc, e: u32, d: &RingElem) -> Result<RingElem> {
    let m1 = RingElem::from_int(field, 1, -1)?;
    Ok(&m1.pow(u128::from(e)) * &d.reduce(1))
}

fn sgn(e: i64) -> BigRational {
    BigRational::from_integer(e.into())
}

/// `I_a(r, d) = Ig(z^a H(z))` for the rank `r` form of discriminant class
/// `d`, `p` odd. `a` must be integral.
pub fn table_gary(field: &FieldDesc, r: u32, d: &RingElem, a: &Exact) -> Result<RationalFunction> {
    if field.p() == 2 {
        return Err(Error::Unsupported("the odd residue table needs p odd".into()));
    }
    if !a.is_integral() || !d.is_unit() {
        return Err(Error::Invalid("a must be integral and d a unit".into()));
    }
    let q = field.q();
    let ig = igr(q);
    let one = RationalFunction::one();
    let a_unit = a.is_unit();
    if r % 2 == 1 {
        let h = i64::from(r.div_ceil(2));
        if !a_unit {
            return Ok(&(&one - &tq(q, 1, r)) * &ig);
        }
        let e = eta_of(&(&a.to_ring(1)? * &signed_disc(field, r.div_ceil(2), d)?))?;
        let c = sgn(e) * q_pow(q, -h);
        let lin = RationalFunction::from_poly(Poly::from_coeffs(vec![BigRational::one(), c.clone()]));
        return Ok(&(&lin * &ig) - &RationalFunction::constant(q_pow(q, -i64::from(r)) + c));
    }
    let eps = sgn(eta_of(&signed_disc(field, r / 2, d)?)?) * q_pow(q, -i64::from(r / 2));
    let front = BigRational::one() - &eps;
    if !a_unit {
        let lin = RationalFunction::from_poly(Poly::from_coeffs(vec![BigRational::one(), eps]));
        return Ok((&lin * &ig).scale(&front));
    }
    Ok((&ig + &RationalFunction::constant(eps)).scale(&front))
}

fn gary_class(q: &UnimodularClass, a: &Exact) -> Result<RationalFunction> {
    table_gary(q.field(), q.rank(), &q.disc()?, a)
}

/// `(1 - t^2/q^r)^-1`.
fn periodic(q: u64, r: u32) -> Result<RationalFunction> {
    RationalFunction::one()
        .checked_div(&RationalFunction::from_poly(&Poly::one() - &Poly::monomial(q_pow(q, -i64::from(r)), 2)))
}

/// The unsimplified last two terms of the pure-form sum, without the factor
/// `t^(w-1)/q_(w-1)`: `(I_0(Qa) + t/q^ra I_0(Qb)) / (1 - t^2/q^r)`.
pub fn final_block_raw(qa: &UnimodularClass, qb: &UnimodularClass) -> Result<RationalFunction> {
    let field = qa.field();
    let zero = Exact::zero(field);
    let q = field.q();
    let r = qa.rank() + qb.rank();
    let s = &gary_class(qa, &zero)? + &(&tq(q, 1, qa.rank()) * &gary_class(qb, &zero)?);
    Ok(&s * &periodic(q, r)?)
}

/// The same quantity in closed form, one expression per parity pattern of
/// `(rank Qa, rank Qb)`.
pub fn final_block(qa: &UnimodularClass, qb: &UnimodularClass) -> Result<RationalFunction> {
    let field = qa.field();
    if field.p() == 2 {
        return Err(Error::Unsupported("final block simplification needs p odd".into()));
    }
    let q = field.q();
    let (ra, rb) = (qa.rank(), qb.rank());
    let r = ra + rb;
    let ig = igr(q);
    let t_minus_1 = RationalFunction::from_poly(Poly::from_ints(&[-1, 1]));
    let x = match (ra % 2, rb % 2) {
        (1, 1) => RationalFunction::one(),
        (0, 0) => {
            let ea = eta_of(&signed_disc(field, ra / 2, &qa.disc()?)?)?;
            let e = eta_of(&signed_disc(field, r / 2, &qa.add(qb)?.disc()?)?)?;
            let den = RationalFunction::from_poly(Poly::from_coeffs(vec![
                BigRational::one(),
                -sgn(e) * q_pow(q, -i64::from(r / 2)),
            ]));
            let frac = t_minus_1.scale(&(sgn(ea) * q_pow(q, -i64::from(ra / 2)))).checked_div(&den)?;
            &RationalFunction::one() + &frac
        }
        (0, 1) => {
            let ea = eta_of(&signed_disc(field, ra / 2, &qa.disc()?)?)?;
            let frac = &t_minus_1.scale(&(sgn(ea) * q_pow(q, -i64::from(ra / 2)))) * &periodic(q, r)?;
            &RationalFunction::one() + &frac
        }
        _ => {
            let eb = eta_of(&signed_disc(field, rb / 2, &qb.disc()?)?)?;
            let c = sgn(eb) * q_pow(q, -i64::from((ra + r) / 2));
            let frac = &t_minus_1.shift(1).scale(&c) * &periodic(q, r)?;
            &RationalFunction::one() + &frac
        }
    };
    Ok(&x * &ig)
}

/// Closed-form zeta function for odd `p`.
pub fn zeta_odd(j: &JordanForm) -> Result<ZetaResult> {
    let field = j.field();
    if field.p() == 2 {
        return Err(Error::Unsupported("zeta_odd needs p odd; use zeta_2unramified".into()));
    }
    check_standardizable(j)?;
    let j = j.standardized();
    let q = field.q();
    let zero = Exact::zero(field);
    let c = j.constant();
    let fold_term =
        |i: u32, a: &Exact| -> Result<RationalFunction> { Ok(&tq(q, i, j.q_exp(i)) * &gary_class(&j.fold(i)?, a)?) };
    let kappa = j.kappa();
    let (zf, case) = match (j.lambda(), kappa) {
        (None, None) => {
            let Some(top) = j.omega() else {
                return Ok(ZetaResult::degenerate(&j));
            };
            let w = top.max(1);
            let mut z = RationalFunction::zero();
            for i in 0..w - 1 {
                z = &z + &fold_term(i, &zero)?;
            }
            let m = &tq(q, w - 1, j.q_exp(w - 1)) * &final_block(&j.fold(w - 1)?, &j.fold(w)?)?;
            (&z + &m, DispatchCase::PureForm { omega: w })
        }
        (Some(l), k) if k.is_none_or(|k| k >= l) => {
            let mut z = RationalFunction::zero();
            for i in 0..l {
                z = &z + &fold_term(i, &zero)?;
            }
            z = &z + &(&tq(q, l, j.q_exp(l)) * &igr(q));
            (z, DispatchCase::LinearDominates { lambda: l })
        }
        (l, Some(k)) => {
            let mut z = RationalFunction::zero();
            for i in 0..=k {
                z = &z + &fold_term(i, &c.mul_p_pow(-i64::from(i)))?;
            }
            z = &z + &tq(q, k, j.q_exp(k + 1));
            (z, DispatchCase::ConstantDominates { lambda: l, kappa: k })
        }
        _ => unreachable!("all dispatch cases covered"),
    };
    Ok(ZetaResult::new(zf, &j, case))
}

/// The reduced denominator of `Z` for a pure form, from the ranks and
/// discriminants of the even- and odd-exponent parts.
pub fn poles_odd(j: &JordanForm) -> Result<Poly> {
    let field = j.field();
    if field.p() == 2 || j.lambda().is_some() || !j.constant().is_zero() {
        return Err(Error::Invalid("poles_odd needs a pure form over odd p".into()));
    }
    let q = field.q();
    let mut even = UnimodularClass::zero(field);
    let mut odd = UnimodularClass::zero(field);
    for (i, b) in j.blocks() {
        if i % 2 == 0 {
            even = even.add(b)?;
        } else {
            odd = odd.add(b)?;
        }
    }
    let r = even.rank() + odd.rank();
    if r == 0 {
        return Ok(Poly::one());
    }
    let al = alpha(field)?;
    let minus_alpha = &RingElem::from_int(field, 1, -1)? * &al;
    let special = |c: &UnimodularClass| -> Result<bool> {
        Ok(match c.rank() {
            0 | 1 => true,
            2 => eta_of(&(&c.disc()?.reduce(1) * &minus_alpha))? == 1,
            _ => false,
        })
    };
    let lin = |c: BigRational| Poly::from_coeffs(vec![BigRational::one(), -c]);
    let simple = lin(q_pow(q, -1));
    let square =
        Poly::from_coeffs(vec![BigRational::one(), BigRational::from_integer(0.into()), -q_pow(q, -i64::from(r))]);
    if special(&even)? && special(&odd)? {
        return Ok(if even.rank() == odd.rank() { lin(q_pow(q, -i64::from(r / 2))) } else { square });
    }
    Ok(match (even.rank() % 2, odd.rank() % 2) {
        (1, 1) => simple,
        (0, 0) => {
            let d = even.add(&odd)?.disc()?;
            let e = eta_of(&signed_disc(field, r / 2, &d)?)?;
            &simple * &lin(sgn(e) * q_pow(q, -i64::from(r / 2)))
        }
        _ => &simple * &square,
    })
}
