use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{CosetCombination, CosetTerm};
use crate::padic::{teichmuller_set, trace_zero_set, Exact, FieldDesc, ResidueRing, RingElem};
use crate::quadform::{QuadPoly, UnimodularClass};
use crate::ratfunc::{q_pow, rat};
use crate::{Error, Result};

/// Largest enumeration [`hensel_head`] performs.
pub const HEAD_GUARD: u128 = 10_000_000;

/// Partial generating function of `f` on a region of `R^n` on which the
/// gradient has valuation exactly `j`:
/// `q^(-n(j+1)) sum_a z^(f(a) + p^(2j+1) R)` over representatives `a` mod
/// `p^(j+1)` in the region. The gradient condition is checked at every
/// representative.
pub fn hensel_head(f: &QuadPoly, region: &dyn Fn(&[RingElem]) -> bool, j: u32) -> Result<CosetCombination> {
    let field = f.field().clone();
    let n = f.n();
    let per = field.q_pow(j + 1).ok_or_else(|| Error::SizeGuard("head too large".into()))?;
    let total = field
        .q_pow((j + 1) * n as u32)
        .filter(|&s| s <= HEAD_GUARD)
        .ok_or_else(|| Error::SizeGuard(format!("head enumeration of {n} variables at depth {}", j + 1)))?;
    let level = 2 * j + 1;
    let low = ResidueRing::new(&field, j + 1)?;
    let top = ResidueRing::new(&field, level)?;
    let at = |r: &ResidueRing, e: &Exact| r.from_elem(&e.to_ring(r.k())?);
    let two_m: Vec<Vec<u64>> = f
        .matrix()
        .iter()
        .map(|row| row.iter().map(|e| at(&low, &(e + e))).collect::<Result<_>>())
        .collect::<Result<_>>()?;
    let b: Vec<u64> = f.linear().iter().map(|e| at(&low, e)).collect::<Result<_>>()?;
    let (diag, cross) = f.monomials();
    let diag: Vec<u64> = diag.iter().map(|e| at(&top, e)).collect::<Result<_>>()?;
    let lin: Vec<u64> = f.linear().iter().map(|e| at(&top, e)).collect::<Result<_>>()?;
    let cross: Vec<(usize, usize, u64)> =
        cross.iter().map(|(r, c, e)| Ok((*r, *c, at(&top, e)?))).collect::<Result<_>>()?;
    let c0 = at(&top, f.constant())?;
    let elems: Vec<RingElem> = (0..per as u64).map(|i| low.to_elem(i)).collect();
    let lift: Vec<u64> = (0..per as u64).map(|i| top.lift_from(&low, i)).collect();
    let mut counts = vec![0u64; top.size() as usize];
    let mut idx = vec![0usize; n];
    let mut pt: Vec<RingElem> = idx.iter().map(|&i| elems[i].clone()).collect();
    let mut x = vec![0u64; n];
    for _ in 0..total {
        for (slot, &i) in pt.iter_mut().zip(&idx) {
            if *slot != elems[i] {
                *slot = elems[i].clone();
            }
        }
        if region(&pt) {
            let grad_val = (0..n)
                .map(|r| {
                    let g = (0..n).fold(b[r], |g, c| low.add(g, low.mul(two_m[r][c], idx[c] as u64)));
                    low.val(g)
                })
                .min()
                .unwrap_or(j + 1);
            if grad_val != j {
                let shown: Vec<String> = pt.iter().map(ToString::to_string).collect();
                return Err(Error::Invalid(format!(
                    "gradient has valuation {grad_val}, not {j}, at ({})",
                    shown.join(", ")
                )));
            }
            for (xi, &i) in x.iter_mut().zip(&idx) {
                *xi = lift[i];
            }
            let mut v = c0;
            for (i, &xi) in x.iter().enumerate() {
                v = top.add(v, top.mul(top.add(top.mul(diag[i], xi), lin[i]), xi));
            }
            for &(r, c, e) in &cross {
                v = top.add(v, top.mul(e, top.mul(x[r], x[c])));
            }
            counts[v as usize] += 1;
        }
        for slot in idx.iter_mut() {
            *slot += 1;
            if *slot < per as usize {
                break;
            }
            *slot = 0;
        }
    }
    let total = num_bigint::BigInt::from(total);
    let mut out = CosetCombination::zero(&field);
    for (v, &cnt) in counts.iter().enumerate().filter(|(_, &c)| c > 0) {
        out.push(CosetTerm::Coset(top.to_elem(v as u64)), BigRational::new(cnt.into(), total.clone()));
    }
    Ok(out.coalesce())
}

fn not_all_divisible(x: &[RingElem]) -> bool {
    x.iter().any(RingElem::is_unit)
}

fn head_cache() -> &'static Mutex<HashMap<UnimodularClass, CosetCombination>> {
    static CACHE: OnceLock<Mutex<HashMap<UnimodularClass, CosetCombination>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Head of the generating function of a unimodular form, by enumeration of
/// the primitive vectors mod `p^(l+1)`, `l = v(2)`. Zero for rank 0.
pub fn head_unimodular(q: &UnimodularClass) -> Result<CosetCombination> {
    if q.is_zero() {
        return Ok(CosetCombination::zero(q.field()));
    }
    if let Some(h) = head_cache().lock().expect("cache lock").get(q) {
        return Ok(h.clone());
    }
    let f = QuadPoly::form(q.field(), q.matrix()?)?;
    let h = hensel_head(&f, &not_all_divisible, q.field().ell())?;
    head_cache().lock().expect("cache lock").insert(q.clone(), h.clone());
    Ok(h)
}

/// `G_Q` for unimodular `Q`, exact through level `m`: the head recursion
/// unrolled while `2s < m`, plus the tail `q^(-nS) z^(p^(2S) R)`, returned
/// separately as `(body, remainder)`. The zero form gives `z^0`.
pub fn gf_truncated(q: &UnimodularClass, m: u32) -> Result<(CosetCombination, CosetCombination)> {
    let field = q.field();
    if q.is_zero() {
        return Ok((CosetCombination::point(Exact::zero(field))?, CosetCombination::zero(field)));
    }
    let n = i64::from(q.rank());
    let h = head_unimodular(q)?;
    let mut body = CosetCombination::zero(field);
    let mut s = 0u32;
    while 2 * s < m {
        body = &body + &h.scale_p(2 * s)?.scale_coeffs(&q_pow(field.q(), -n * i64::from(s)));
        s += 1;
    }
    let rem = CosetCombination::ideal(field, 2 * s)?.scale_coeffs(&q_pow(field.q(), -n * i64::from(s)));
    Ok((body, rem))
}

fn coset_of(a: &Exact, j: u32) -> Result<CosetTerm> {
    Ok(CosetTerm::Coset(a.to_ring(j)?))
}

fn ideal_term(field: &FieldDesc, j: u32) -> Result<CosetTerm> {
    CosetTerm::ideal(field, j)
}

fn teich_units(field: &FieldDesc, k: u32) -> Result<Vec<RingElem>> {
    Ok(teichmuller_set(field, k)?.into_iter().filter(|t| !t.is_zero()).collect())
}

/// `sum_{tau in T*, s in S} z^(f(tau, s) + p^j R)`.
fn tau_s_sum(field: &FieldDesc, j: u32, f: impl Fn(&Exact, &Exact) -> Exact) -> Result<CosetCombination> {
    let mut out = CosetCombination::zero(field);
    let s_set = trace_zero_set(field, j.max(1))?;
    for tau in teich_units(field, j.max(1))? {
        for s in &s_set {
            let v = f(&Exact::from_ring(&tau), &Exact::from_ring(s));
            out.push(coset_of(&v, j)?, BigRational::one());
        }
    }
    Ok(out)
}

fn check_odd(field: &FieldDesc) -> Result<()> {
    if field.p() == 2 {
        return Err(Error::Unsupported("closed form stated for odd p".into()));
    }
    Ok(())
}

fn check_dyadic(field: &FieldDesc) -> Result<()> {
    if field.p() != 2 {
        return Err(Error::Unsupported("closed form stated for p = 2".into()));
    }
    Ok(())
}

fn eta(u: &RingElem) -> Result<i64> {
    Ok(i64::from(u.reduce(1).eta()?))
}

/// `u Sq`, odd `p`: `z^R - z^(pR)/q + (1/q) sum_T eta(u tau) z^(tau + pR)`.
pub fn head_sq_odd(u: &RingElem) -> Result<CosetCombination> {
    let field = u.field();
    check_odd(field)?;
    let qi = q_pow(field.q(), -1);
    let mut out = CosetCombination::ideal(field, 0)?;
    out.push(ideal_term(field, 1)?, -qi.clone());
    for tau in teichmuller_set(field, 1)? {
        let e = eta(&(&u.reduce(1) * &tau))?;
        out.push(CosetTerm::Coset(tau), &qi * BigRational::from_integer(e.into()));
    }
    Ok(out)
}

/// `u Sq`, `p = 2`: `(2/q^2) sum_{T*, S} z^(u tau (1 + 4s) + 8R)`.
pub fn head_sq_dyadic(u: &RingElem) -> Result<CosetCombination> {
    let field = u.field();
    check_dyadic(field)?;
    let a = Exact::from_ring(u);
    let four = Exact::from_int(field, 4);
    let one = Exact::one(field);
    let sum = tau_s_sum(field, 3, |tau, s| &(&a * tau) * &(&one + &(&four * s)))?;
    Ok(sum.scale_coeffs(&rat(2, field.q() as i64 * field.q() as i64)))
}

/// Planes only (`Hyp^(r/2)` for `sign = +1`, `Ell + Hyp^((r-2)/2)` for
/// `-1`): `(1 -+ q^(-r/2)) (z^(2R) +- q^(-r/2) z^(2pR))`.
pub fn head_planes(field: &FieldDesc, r: u32, sign: i8) -> Result<CosetCombination> {
    if r % 2 == 1 || (sign < 0 && r < 2) {
        return Err(Error::Invalid(format!("no plane sum of rank {r} and sign {sign}")));
    }
    let l = field.ell();
    let s = BigRational::from_integer(i64::from(sign).into());
    let e = &s * q_pow(field.q(), -i64::from(r / 2));
    let mut out = CosetCombination::term(ideal_term(field, l)?, BigRational::one());
    out.push(ideal_term(field, l + 1)?, e.clone());
    Ok(out.scale_coeffs(&(BigRational::one() - e)))
}

/// Odd `p`, rank `r`, discriminant class `d`.
pub fn head_odd(field: &FieldDesc, r: u32, d: &RingElem) -> Result<CosetCombination> {
    check_odd(field)?;
    let q = field.q();
    let minus_one = RingElem::from_int(field, 1, -1)?;
    let d = d.reduce(1);
    if r == 0 {
        return Ok(CosetCombination::zero(field));
    }
    if r.is_multiple_of(2) {
        let e = eta(&(&minus_one.pow(u128::from(r / 2)) * &d))?;
        return head_planes(field, r, e as i8);
    }
    let e = eta(&(&minus_one.pow(u128::from((r - 1) / 2)) * &d))?;
    let c = BigRational::from_integer(e.into()) * q_pow(q, -i64::from(r.div_ceil(2)));
    let mut out = CosetCombination::ideal(field, 0)?;
    out.push(ideal_term(field, 1)?, -q_pow(q, -i64::from(r)));
    for tau in teichmuller_set(field, 1)? {
        let et = if tau.is_zero() { 0 } else { eta(&tau)? };
        out.push(CosetTerm::Coset(tau), &c * BigRational::from_integer(et.into()));
    }
    Ok(out)
}

/// `p = 2`, `a Sq + Planes(sign)` of odd rank `r`.
pub fn head_one_square(a: &RingElem, r: u32, sign: i8) -> Result<CosetCombination> {
    let field = a.field();
    check_dyadic(field)?;
    if r.is_multiple_of(2) || (sign < 0 && r < 3) {
        return Err(Error::Invalid(format!("no form a Sq + Planes of rank {r} and sign {sign}")));
    }
    let q = field.q();
    let s = BigRational::from_integer(i64::from(sign).into());
    let outer = BigRational::one() - &s * q_pow(q, -i64::from((r - 1) / 2));
    let mut inner = CosetCombination::ideal(field, 0)?;
    let ae = Exact::from_ring(a);
    let c = &s * q_pow(q, -i64::from(r.div_ceil(2)));
    for tau in teichmuller_set(field, 2)? {
        inner.push(coset_of(&(&ae * &Exact::from_ring(&tau)), 2)?, c.clone());
    }
    let four = Exact::from_int(field, 4);
    let one = Exact::one(field);
    let tail = tau_s_sum(field, 3, |tau, s| &(&ae * tau) * &(&one + &(&four * s)))?
        .scale_coeffs(&(rat(2, 1) * q_pow(q, -i64::from(r + 1))));
    Ok(&inner.scale_coeffs(&outer) + &tail)
}

/// `(-1)^Tr(x)` for `x` integral.
fn trace_sign(x: &Exact) -> Result<i64> {
    Ok(if x.to_ring(1)?.trace_mod2() == 0 { 1 } else { -1 })
}

/// `sigma = (-1)^Tr((a+b)/(4a))`, defined when `4 | a + b`.
pub fn sigma(a: &RingElem, b: &RingElem) -> Result<i64> {
    let (a, b) = (Exact::from_ring(a), Exact::from_ring(b));
    let x = (&a + &b).checked_div(&(&Exact::from_int(a.field(), 4) * &a))?;
    trace_sign(&x)
}

/// Whether `4 | a + b` for the stored representatives (determined mod 8).
pub fn four_divides(terms: &[&RingElem]) -> bool {
    let f = terms[0].field();
    let s = terms.iter().fold(Exact::zero(f), |acc, t| &acc + &Exact::from_ring(t));
    s.valuation().is_none_or(|v| v >= 2)
}

/// `p = 2`, `a Sq + b Sq + Planes(sign)` of even rank `r` (with `a = b = 1
/// mod 2`).
pub fn head_two_squares(a: &RingElem, b: &RingElem, r: u32, sign: i8) -> Result<CosetCombination> {
    let field = a.field();
    check_dyadic(field)?;
    if r % 2 == 1 || r < 2 || (sign < 0 && r < 4) {
        return Err(Error::Invalid(format!("no form a Sq + b Sq + Planes of rank {r} and sign {sign}")));
    }
    let q = field.q();
    let s = BigRational::from_integer(i64::from(sign).into());
    let qr = q_pow(q, -i64::from(r));
    let qh = q_pow(q, -i64::from(r / 2));
    if four_divides(&[a, b]) {
        let sg = BigRational::from_integer(sigma(a, b)?.into());
        let mut out = CosetCombination::ideal(field, 0)?;
        out.push(ideal_term(field, 1)?, -(&s * &qh));
        out.push(ideal_term(field, 2)?, &s * &qh - (&sg + BigRational::one()) * &qr);
        out.push(ideal_term(field, 3)?, &sg * &qr);
        return Ok(out);
    }
    let (ae, be) = (Exact::from_ring(a), Exact::from_ring(b));
    let sum = &ae + &be;
    let four = Exact::from_int(field, 4);
    let shift = four.checked_div(&sum)?;
    let outer = BigRational::one() - &s * q_pow(q, -i64::from((r - 2) / 2));
    let mut out = CosetCombination::ideal(field, 0)?;
    out.push(ideal_term(field, 1)?, &s * &qh);
    let mut out = out.scale_coeffs(&outer);
    let mid = tau_s_sum(field, 2, |tau, s| tau * &(&ae + &(&shift * s)))?
        .scale_coeffs(&(rat(2, 1) * &s * q_pow(q, -i64::from((r + 2) / 2))));
    let tail = tau_s_sum(field, 3, |tau, s| tau * &(&sum + &(&four * s)))?
        .scale_coeffs(&(rat(2, 1) * q_pow(q, -i64::from(r + 1))));
    out = &(&out + &mid) + &tail;
    Ok(out)
}

/// The head of any classified unimodular form from the closed forms.
pub fn head_closed_form(q: &UnimodularClass) -> Result<CosetCombination> {
    let field = q.field();
    if q.is_zero() {
        return Ok(CosetCombination::zero(field));
    }
    if field.p() != 2 {
        return head_odd(field, q.rank(), &q.disc()?);
    }
    let sq = q.square_coeffs();
    match sq.len() {
        0 => head_planes(field, q.rank(), q.plane_sign()),
        1 => head_one_square(&sq[0], q.rank(), q.plane_sign()),
        2 => head_two_squares(&sq[0], &sq[1], q.rank(), q.plane_sign()),
        _ => Err(Error::Invalid(format!("unexpected shape {q}"))),
    }
}

/// `F(1)` of a head: `1 - q^-rank`.
pub fn head_mass(q: &UnimodularClass) -> BigRational {
    if q.is_zero() {
        return BigRational::zero();
    }
    BigRational::one() - q_pow(q.field().q(), -i64::from(q.rank()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sq_over_z3() {
        let f = FieldDesc::new(3, 1).unwrap();
        let one = RingElem::one(&f, 1).unwrap();
        let h = head_unimodular(&UnimodularClass::sq(&one).unwrap()).unwrap();
        assert_eq!(h.normalize(), head_sq_odd(&one).unwrap().normalize());
        assert_eq!(h.mass(), rat(2, 3));
    }

    #[test]
    fn y2_plus_y_over_z2() {
        let f = FieldDesc::new(2, 1).unwrap();
        let g = QuadPoly::from_ints(&f, &[vec![1]], &[1], 0).unwrap();
        let h = hensel_head(&g, &|_| true, 0).unwrap();
        assert_eq!(h, CosetCombination::ideal(&f, 1).unwrap());
        let x = QuadPoly::from_ints(&f, &[vec![0]], &[1], 0).unwrap();
        assert_eq!(hensel_head(&x, &|_| true, 0).unwrap(), CosetCombination::ideal(&f, 0).unwrap());
        let bad = QuadPoly::from_ints(&f, &[vec![1]], &[], 0).unwrap();
        assert!(hensel_head(&bad, &|_| true, 0).is_err());
    }

    #[test]
    fn planes() {
        for (p, fdeg) in [(2, 1), (3, 1), (2, 2)] {
            let f = FieldDesc::new(p, fdeg).unwrap();
            let hyp = head_unimodular(&UnimodularClass::hyp(&f)).unwrap();
            assert_eq!(hyp.normalize(), head_planes(&f, 2, 1).unwrap().normalize());
            let ell = head_unimodular(&UnimodularClass::ell(&f)).unwrap();
            assert_eq!(ell.normalize(), head_planes(&f, 2, -1).unwrap().normalize());
        }
    }
}
