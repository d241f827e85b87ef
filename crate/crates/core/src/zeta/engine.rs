use super::{check_standardizable, tq, DispatchCase, ZetaResult};
use crate::genfun::i_term;
use crate::padic::Exact;
use crate::quadform::{JordanForm, UnimodularClass};
use crate::ratfunc::{igr, q_pow, Poly, RationalFunction};
use crate::Result;

/// `(Q_(i), Q_(i+1), Q_{i+2}, ..., Q_{i+2l})`.
fn parts(j: &JordanForm, i: u32, ell: u32) -> Result<Vec<UnimodularClass>> {
    let mut out = vec![j.fold(i)?];
    if ell > 0 {
        out.push(j.fold(i + 1)?);
        for s in 2..=2 * ell {
            out.push(j.block(i + s));
        }
    }
    Ok(out)
}

/// Zeta function of any Jordan form over an unramified ring through the
/// generating-function calculus: every term is `Ig` of a head times folded
/// generating functions, computed on coset combinations. Slower than the
/// tables but covers `p = 2` with a constant term.
pub fn zeta_engine(j: &JordanForm) -> Result<ZetaResult> {
    check_standardizable(j)?;
    let j = j.standardized();
    let field = j.field();
    let q = field.q();
    let ell = field.ell();
    let zero = Exact::zero(field);
    let c = j.constant();
    let term = |i: u32, a: &Exact, mu: Option<u32>| -> Result<RationalFunction> {
        Ok(&tq(q, i, j.q_exp(i)) * &i_term(a, mu, &parts(&j, i, ell)?)?)
    };
    let (zf, case) = match (j.lambda(), j.kappa()) {
        (None, None) => {
            let Some(top) = j.omega() else {
                return Ok(ZetaResult::degenerate(&j));
            };
            let w = top.max(1);
            let mut z = RationalFunction::zero();
            for i in 0..w - 1 {
                z = &z + &term(i, &zero, None)?;
            }
            let (qa, qb) = (j.fold(w - 1)?, j.fold(w)?);
            let pad = |x: &UnimodularClass, y: &UnimodularClass| -> Vec<UnimodularClass> {
                let mut v = vec![x.clone()];
                if ell > 0 {
                    v.push(y.clone());
                    v.extend((2..=2 * ell).map(|_| UnimodularClass::zero(field)));
                }
                v
            };
            let last = &(&tq(q, w - 1, j.q_exp(w - 1)) * &i_term(&zero, None, &pad(&qa, &qb))?)
                + &(&tq(q, w, j.q_exp(w)) * &i_term(&zero, None, &pad(&qb, &qa))?);
            let per = RationalFunction::one().checked_div(&RationalFunction::from_poly(
                &Poly::one() - &Poly::monomial(q_pow(q, -i64::from(j.rank())), 2),
            ))?;
            (&z + &(&last * &per), DispatchCase::PureForm { omega: w })
        }
        (Some(l), k) if k.is_none_or(|k| k >= l) => {
            let mut z = RationalFunction::zero();
            for i in 0..l {
                let mu = (i + 2 * ell >= l).then_some(l - i);
                z = &z + &term(i, &zero, mu)?;
            }
            (&z + &(&tq(q, l, j.q_exp(l)) * &igr(q)), DispatchCase::LinearDominates { lambda: l })
        }
        (l, Some(k)) => {
            let mut z = RationalFunction::zero();
            for i in 0..=k {
                let mu = l.filter(|&l| i + 2 * ell >= l).map(|l| l - i);
                z = &z + &term(i, &c.mul_p_pow(-i64::from(i)), mu)?;
            }
            (&z + &tq(q, k, j.q_exp(k + 1)), DispatchCase::ConstantDominates { lambda: l, kappa: k })
        }
        _ => unreachable!("all dispatch cases covered"),
    };
    Ok(ZetaResult::new(zf, &j, case))
}
