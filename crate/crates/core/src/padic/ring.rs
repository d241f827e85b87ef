use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};

use super::FieldDesc;
use crate::{Error, Result};

/// A `pi`-adic valuation, possibly only known as a lower bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExtValuation {
    Finite(u32),
    /// Zero at the working precision `k`, so the true valuation is `>= k`.
    AtLeast(u32),
    Infinity,
}

impl ExtValuation {
    pub fn finite(self) -> Option<u32> {
        match self {
            ExtValuation::Finite(v) => Some(v),
            _ => None,
        }
    }

    /// Lower bound (`u32::MAX` for infinity).
    pub fn bound(self) -> u32 {
        match self {
            ExtValuation::Finite(v) | ExtValuation::AtLeast(v) => v,
            ExtValuation::Infinity => u32::MAX,
        }
    }

    pub fn min(self, other: Self) -> Self {
        match (self, other) {
            (ExtValuation::Infinity, x) | (x, ExtValuation::Infinity) => x,
            (a, b) => {
                if a.bound() < b.bound() || (a.bound() == b.bound() && matches!(a, ExtValuation::Finite(_))) {
                    a
                } else {
                    b
                }
            }
        }
    }
}

impl Add for ExtValuation {
    type Output = ExtValuation;
    fn add(self, rhs: Self) -> Self {
        use ExtValuation::*;
        match (self, rhs) {
            (Infinity, _) | (_, Infinity) => Infinity,
            (Finite(a), Finite(b)) => Finite(a + b),
            (Finite(a) | AtLeast(a), Finite(b) | AtLeast(b)) => AtLeast(a + b),
        }
    }
}

impl fmt::Display for ExtValuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtValuation::Finite(v) => write!(f, "{v}"),
            ExtValuation::AtLeast(v) => write!(f, ">={v}"),
            ExtValuation::Infinity => write!(f, "inf"),
        }
    }
}

/// An element of `R/p^k = GR(p^k, f)`, stored as a polynomial residue
/// modulo the field's modulus with coefficients in `[0, p^k)`.
///
/// `k = 0` is allowed and denotes the zero ring.
#[derive(Clone)]
pub struct RingElem {
    field: FieldDesc,
    k: u32,
    modk: u64,
    coeffs: Vec<u64>,
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// Reduces a coefficient vector modulo the monic modulus, in place, leaving
/// exactly `f` coefficients.
fn reduce_poly(poly: &mut Vec<u64>, field: &FieldDesc, m: u64) {
    let f = field.f();
    let modulus = field.modulus();
    for d in (f..poly.len()).rev() {
        let c = poly[d];
        if c == 0 {
            continue;
        }
        for (i, &mi) in modulus.iter().take(f).enumerate() {
            let sub = mulmod(c, mi.rem_euclid(m as i64) as u64, m);
            poly[d - f + i] = (poly[d - f + i] + m - sub) % m;
        }
    }
    poly.truncate(f);
}

impl RingElem {
    /// Builds an element from integer coefficients (low degree first);
    /// missing coefficients are zero, extra ones are reduced by the modulus.
    pub fn new(field: &FieldDesc, k: u32, coeffs: &[i64]) -> Result<Self> {
        let modk = field.p_pow(k)?;
        let f = field.f();
        let mut poly: Vec<u64> = coeffs.iter().map(|&c| c.rem_euclid(modk.max(1) as i64) as u64).collect();
        poly.resize(poly.len().max(f), 0);
        reduce_poly(&mut poly, field, modk);
        Ok(RingElem { field: field.clone(), k, modk, coeffs: poly })
    }

    fn one_unchecked(field: &FieldDesc, k: u32, modk: u64) -> Self {
        let mut coeffs = vec![0; field.f()];
        coeffs[0] = 1 % modk;
        RingElem { field: field.clone(), k, modk, coeffs }
    }

    fn gen_unchecked(field: &FieldDesc, k: u32, modk: u64) -> Self {
        let mut poly = vec![0, 1 % modk];
        poly.resize(poly.len().max(field.f()), 0);
        reduce_poly(&mut poly, field, modk);
        RingElem { field: field.clone(), k, modk, coeffs: poly }
    }

    pub fn from_int(field: &FieldDesc, k: u32, n: i64) -> Result<Self> {
        Self::new(field, k, &[n])
    }

    /// Coefficients already reduced into `[0, p^k)`.
    pub fn from_reduced(field: &FieldDesc, k: u32, coeffs: Vec<u64>) -> Result<Self> {
        let modk = field.p_pow(k)?;
        if coeffs.len() != field.f() || coeffs.iter().any(|&c| c >= modk) {
            return Err(Error::Invalid("coefficients out of range".into()));
        }
        Ok(RingElem { field: field.clone(), k, modk, coeffs })
    }

    pub fn zero(field: &FieldDesc, k: u32) -> Result<Self> {
        Self::new(field, k, &[])
    }

    pub fn one(field: &FieldDesc, k: u32) -> Result<Self> {
        Self::new(field, k, &[1])
    }

    /// The class of `x` (the generator of the residue extension).
    pub fn generator(field: &FieldDesc, k: u32) -> Result<Self> {
        let modk = field.p_pow(k)?;
        Ok(Self::gen_unchecked(field, k, modk))
    }

    pub fn field(&self) -> &FieldDesc {
        &self.field
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    /// Position in digit order: `sum c_i (p^k)^i`.
    pub fn index(&self) -> u128 {
        self.coeffs.iter().rev().fold(0u128, |acc, &c| acc * self.modk as u128 + c as u128)
    }

    pub fn from_index(field: &FieldDesc, k: u32, mut idx: u128) -> Result<Self> {
        let modk = field.p_pow(k)?;
        let mut coeffs = Vec::with_capacity(field.f());
        for _ in 0..field.f() {
            coeffs.push((idx % modk as u128) as u64);
            idx /= modk as u128;
        }
        Ok(RingElem { field: field.clone(), k, modk, coeffs })
    }

    /// All of `R/p^k` in digit order.
    pub fn all(field: &FieldDesc, k: u32) -> Result<Vec<Self>> {
        let n = field.q_pow(k).filter(|&n| n <= 1 << 24).ok_or_else(|| Error::SizeGuard(format!("q^{k} elements")))?;
        (0..n).map(|i| Self::from_index(field, k, i)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.k == 0 || (self.coeffs[0] == 1 && self.coeffs[1..].iter().all(|&c| c == 0))
    }

    pub fn is_unit(&self) -> bool {
        self.k > 0 && self.coeffs.iter().any(|&c| c % self.field.p() != 0)
    }

    /// Valuation; a zero element reports `Infinity` only when the caller
    /// declares it to be exactly zero.
    pub fn valuation(&self, exact_zero: bool) -> ExtValuation {
        if self.is_zero() {
            return if exact_zero { ExtValuation::Infinity } else { ExtValuation::AtLeast(self.k) };
        }
        ExtValuation::Finite(self.val())
    }

    /// Valuation capped at `k`.
    pub fn val(&self) -> u32 {
        let p = self.field.p();
        self.coeffs
            .iter()
            .filter(|&&c| c != 0)
            .map(|&c| {
                let (mut c, mut v) = (c, 0);
                while c % p == 0 {
                    c /= p;
                    v += 1;
                }
                v
            })
            .min()
            .unwrap_or(self.k)
    }

    fn same(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::Invalid("elements over different rings".into()));
        }
        if self.k != other.k {
            return Err(Error::PrecisionMismatch(self.k, other.k));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same(other)?;
        Ok(self.add_raw(other))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.same(other)?;
        Ok(self.add_raw(&other.neg_raw()))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.same(other)?;
        Ok(self.mul_raw(other))
    }

    fn add_raw(&self, other: &Self) -> Self {
        let m = self.modk;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| ((a as u128 + b as u128) % m as u128) as u64)
            .collect();
        RingElem { coeffs, ..self.clone() }
    }

    fn neg_raw(&self) -> Self {
        let m = self.modk;
        let coeffs = self.coeffs.iter().map(|&a| if a == 0 { 0 } else { m - a }).collect();
        RingElem { coeffs, ..self.clone() }
    }

    fn mul_raw(&self, other: &Self) -> Self {
        let m = self.modk;
        let f = self.coeffs.len();
        let mut prod = vec![0u64; 2 * f - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                prod[i + j] = ((prod[i + j] as u128 + a as u128 * b as u128) % m as u128) as u64;
            }
        }
        reduce_poly(&mut prod, &self.field, m);
        RingElem { coeffs: prod, ..self.clone() }
    }

    /// Multiplication by an integer.
    pub fn scalar(&self, c: u64) -> Self {
        let m = self.modk;
        let c = c % m.max(1);
        RingElem { coeffs: self.coeffs.iter().map(|&a| mulmod(a, c, m)).collect(), ..self.clone() }
    }

    pub fn pow(&self, mut e: u128) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one_unchecked(&self.field, self.k, self.modk);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_raw(&base);
            }
            base = base.mul_raw(&base);
            e >>= 1;
        }
        acc
    }

    /// Reduction to a lower precision.
    pub fn reduce(&self, k: u32) -> Self {
        assert!(k <= self.k, "cannot reduce to a higher precision");
        let modk = self.field.p().pow(k);
        RingElem { field: self.field.clone(), k, modk, coeffs: self.coeffs.iter().map(|&c| c % modk).collect() }
    }

    /// Same representative read at a higher precision.
    pub fn lift(&self, k: u32) -> Result<Self> {
        let modk = self.field.p_pow(k)?;
        if k < self.k {
            return Ok(self.reduce(k));
        }
        Ok(RingElem { field: self.field.clone(), k, modk, coeffs: self.coeffs.clone() })
    }

    /// Exact division by `p^j` of the representative; the quotient is read
    /// at the same precision with zero high digits.
    pub fn div_p_pow(&self, j: u32) -> Result<Self> {
        let pj = self.field.p().pow(j);
        if self.coeffs.iter().any(|&c| c % pj != 0) {
            return Err(Error::Invalid(format!("element not divisible by p^{j}")));
        }
        Ok(RingElem { coeffs: self.coeffs.iter().map(|&c| c / pj).collect(), ..self.clone() })
    }

    pub fn mul_p_pow(&self, j: u32) -> Self {
        let pj = self.field.p().pow(j.min(self.k)) % self.modk.max(1);
        self.scalar(pj)
    }

    /// Inverse of a unit by Newton iteration from the residue-field inverse.
    pub fn inv(&self) -> Result<Self> {
        if !self.is_unit() {
            return Err(Error::NotUnit);
        }
        let q = self.field.q() as u128;
        // a^(q-2) inverts modulo p, then x <- x(2 - a x) doubles precision
        let mut x = self.pow(q - 2);
        let two = Self::one_unchecked(&self.field, self.k, self.modk).scalar(2);
        for _ in 0..=self.k.max(1).ilog2() + 1 {
            x = x.mul_raw(&two.add_raw(&self.mul_raw(&x).neg_raw()));
        }
        debug_assert!(self.mul_raw(&x).is_one());
        Ok(x)
    }

    /// The Teichmüller representative congruent to `self` mod `p`.
    pub fn teichmuller(&self) -> Self {
        let q = self.field.q() as u128;
        let mut x = self.clone();
        for _ in 0..=self.k + 1 {
            let y = x.pow(q);
            if y == x {
                return x;
            }
            x = y;
        }
        x
    }

    /// Digits `a = sum p^j tau_j` with each `tau_j` Teichmüller.
    pub fn teichmuller_digits(&self) -> Vec<Self> {
        let mut rem = self.clone();
        let mut out = Vec::with_capacity(self.k as usize);
        for _ in 0..self.k {
            let tau = rem.teichmuller();
            let d = rem.add_raw(&tau.neg_raw());
            out.push(tau);
            rem = d.div_p_pow(1).expect("digit difference is divisible by p");
        }
        out
    }

    /// Ring Frobenius, acting as `tau -> tau^p` on Teichmüller digits.
    pub fn frobenius(&self) -> Self {
        let p = self.field.p() as u128;
        let mut acc = RingElem { coeffs: vec![0; self.coeffs.len()], ..self.clone() };
        for (j, tau) in self.teichmuller_digits().into_iter().enumerate() {
            acc = acc.add_raw(&tau.pow(p).mul_p_pow(j as u32));
        }
        acc
    }

    /// Absolute trace to `Z/2^k` (only used for `p = 2`).
    pub fn trace(&self) -> Result<RingElem> {
        if self.field.p() != 2 {
            return Err(Error::Unsupported("trace is only provided for p = 2".into()));
        }
        let t = self.trace_int();
        let base = FieldDesc::new(2, 1)?;
        RingElem::from_reduced(&base, self.k, vec![t])
    }

    /// Trace as an integer in `[0, p^k)`.
    pub fn trace_int(&self) -> u64 {
        let mut acc = self.clone();
        let mut cur = self.clone();
        for _ in 1..self.field.f() {
            cur = cur.frobenius();
            acc = acc.add_raw(&cur);
        }
        debug_assert!(acc.coeffs[1..].iter().all(|&c| c == 0));
        acc.coeffs[0]
    }

    /// Trace of the residue, in `F_2` (needs only `k >= 1`).
    pub fn trace_mod2(&self) -> u64 {
        let r = self.reduce(1);
        let mut acc = r.clone();
        let mut cur = r;
        for _ in 1..self.field.f() {
            cur = cur.pow(2);
            acc = acc.add_raw(&cur);
        }
        acc.coeffs[0] % 2
    }

    /// Whether the unit `self` is a square in `R`.
    pub fn is_square_unit(&self) -> Result<bool> {
        if !self.is_unit() {
            return Err(Error::NotUnit);
        }
        if self.field.p() != 2 {
            let r = self.reduce(1);
            return Ok(r.pow((self.field.q() as u128 - 1) / 2).is_one());
        }
        if self.k < 3 {
            return Err(Error::InsufficientPrecision("square test for p = 2 needs k >= 3".into()));
        }
        let tau = self.teichmuller();
        let u = self.mul_raw(&tau.inv()?);
        let w = u.add_raw(&Self::one_unchecked(&self.field, self.k, self.modk).neg_raw());
        if w.coeffs.iter().any(|&c| c % 4 != 0) {
            return Ok(false);
        }
        Ok(w.div_p_pow(2)?.trace_mod2() == 0)
    }

    /// Quadratic character for odd `p`: `0` on non-units.
    pub fn eta(&self) -> Result<i8> {
        if self.field.p() == 2 {
            return Err(Error::Unsupported("eta is defined for odd p".into()));
        }
        if !self.is_unit() {
            return Ok(0);
        }
        Ok(if self.is_square_unit()? { 1 } else { -1 })
    }

    /// Residue at precision 1 in digit order (an index below `q`).
    pub fn residue_index(&self) -> u64 {
        self.reduce(1).index() as u64
    }
}

/// The Teichmüller set `T` (zero plus the `(q-1)`-th roots of unity) at
/// precision `k`, ordered by residue.
pub fn teichmuller_set(field: &FieldDesc, k: u32) -> Result<Vec<RingElem>> {
    (0..field.q() as u128).map(|i| Ok(RingElem::from_index(field, 1, i)?.lift(k)?.teichmuller())).collect()
}

/// Elements of `T` whose residue has trace zero (`p = 2`).
pub fn trace_zero_set(field: &FieldDesc, k: u32) -> Result<Vec<RingElem>> {
    Ok(teichmuller_set(field, k)?.into_iter().filter(|t| t.trace_mod2() == 0).collect())
}

/// The least nonsquare Teichmüller unit (`p` odd).
pub fn pick_nonsquare(field: &FieldDesc, k: u32) -> Result<RingElem> {
    if field.p() == 2 {
        return Err(Error::Unsupported("nonsquare class is chosen for odd p".into()));
    }
    for t in teichmuller_set(field, k)?.into_iter().skip(1) {
        if !t.is_square_unit()? {
            return Ok(t);
        }
    }
    unreachable!("F_q has nonsquares for odd q")
}

/// The least Teichmüller unit of odd trace (`p = 2`).
pub fn pick_xi(field: &FieldDesc, k: u32) -> Result<RingElem> {
    if field.p() != 2 {
        return Err(Error::Unsupported("xi is chosen for p = 2".into()));
    }
    for t in teichmuller_set(field, k)?.into_iter().skip(1) {
        if t.trace_mod2() == 1 {
            return Ok(t);
        }
    }
    unreachable!("the trace map is surjective")
}

impl PartialEq for RingElem {
    fn eq(&self, other: &Self) -> bool {
        self.k == other.k && self.coeffs == other.coeffs && self.field == other.field
    }
}

impl Eq for RingElem {}

impl Hash for RingElem {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.k.hash(state);
        self.coeffs.hash(state);
    }
}

impl PartialOrd for RingElem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for RingElem {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.k, self.index()).cmp(&(other.k, other.index()))
    }
}

impl fmt::Debug for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} (mod p^{})", self.k)
    }
}

impl fmt::Display for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.len() == 1 {
            return write!(f, "{}", self.coeffs[0]);
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match (i, c) {
                (0, c) => c.to_string(),
                (1, 1) => "x".to_string(),
                (1, c) => format!("{c}*x"),
                (i, 1) => format!("x^{i}"),
                (i, c) => format!("{c}*x^{i}"),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

macro_rules! forward_op {
    ($tr:ident, $m:ident, $raw:ident) => {
        impl $tr for &RingElem {
            type Output = RingElem;
            /// Panics on precision or ring mismatch; see the `checked_*` forms.
            fn $m(self, rhs: &RingElem) -> RingElem {
                self.same(rhs).expect("operands must share ring and precision");
                self.$raw(rhs)
            }
        }
        impl $tr for RingElem {
            type Output = RingElem;
            fn $m(self, rhs: RingElem) -> RingElem {
                (&self).$m(&rhs)
            }
        }
    };
}

forward_op!(Add, add, add_raw);
forward_op!(Mul, mul, mul_raw);

impl RingElem {
    fn sub_raw(&self, other: &Self) -> Self {
        self.add_raw(&other.neg_raw())
    }
}

forward_op!(Sub, sub, sub_raw);

impl Neg for &RingElem {
    type Output = RingElem;
    fn neg(self) -> RingElem {
        self.neg_raw()
    }
}

impl Neg for RingElem {
    type Output = RingElem;
    fn neg(self) -> RingElem {
        self.neg_raw()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(p: u64, f: usize, k: u32, c: &[i64]) -> RingElem {
        RingElem::new(&FieldDesc::new(p, f).unwrap(), k, c).unwrap()
    }

    #[test]
    fn valuations() {
        assert_eq!(el(3, 1, 4, &[0]).valuation(true), ExtValuation::Infinity);
        assert_eq!(el(3, 1, 4, &[0]).valuation(false), ExtValuation::AtLeast(4));
        assert_eq!(el(3, 1, 4, &[12]).valuation(false), ExtValuation::Finite(1));
        assert_eq!(el(2, 1, 5, &[8]).valuation(false), ExtValuation::Finite(3));
        let inf = ExtValuation::Infinity;
        assert_eq!(inf + ExtValuation::Finite(2), inf);
        assert_eq!(inf.min(ExtValuation::Finite(2)), ExtValuation::Finite(2));
    }

    #[test]
    fn teichmuller_examples() {
        assert_eq!(el(3, 1, 2, &[2]).teichmuller(), el(3, 1, 2, &[8]));
        assert!(el(5, 1, 3, &[6]).teichmuller().is_one());
        let x = el(2, 2, 2, &[0, 1]);
        assert_eq!(x.teichmuller(), x);
        let t = el(5, 2, 3, &[2, 3]).teichmuller();
        assert_eq!(t.teichmuller(), t);
        assert_eq!(t.pow(25), t);
    }

    #[test]
    fn trace_examples() {
        assert_eq!(el(2, 1, 3, &[5]).trace_int(), 5);
        assert_eq!(el(2, 2, 1, &[0, 1]).trace_int(), 1);
        assert_eq!(el(2, 2, 1, &[1]).trace_int(), 0);
        assert!(el(3, 1, 1, &[1]).trace().is_err());
    }

    #[test]
    fn squares() {
        assert!(el(5, 1, 1, &[4]).is_square_unit().unwrap());
        assert!(el(2, 1, 5, &[17]).is_square_unit().unwrap());
        assert!(!el(2, 1, 5, &[5]).is_square_unit().unwrap());
        assert!(el(2, 1, 2, &[1]).is_square_unit().is_err());
        assert!(el(2, 1, 3, &[2]).is_square_unit().is_err());
        assert_eq!(el(3, 1, 1, &[0]).eta().unwrap(), 0);
        assert_eq!(el(3, 1, 2, &[3]).eta().unwrap(), 0);
        assert_eq!(el(3, 1, 1, &[1]).eta().unwrap(), 1);
        assert_eq!(el(5, 1, 1, &[2]).eta().unwrap(), -1);
    }

    #[test]
    fn square_count_mod_8() {
        for f in 1..=3 {
            let field = FieldDesc::new(2, f).unwrap();
            let q = field.q();
            let n = RingElem::all(&field, 3)
                .unwrap()
                .into_iter()
                .filter(|a| a.is_unit() && a.is_square_unit().unwrap())
                .count() as u64;
            assert_eq!(n, (q - 1) * q / 2, "f = {f}");
        }
    }

    #[test]
    fn chosen_nonsquares() {
        let f3 = FieldDesc::new(3, 1).unwrap();
        assert_eq!(pick_nonsquare(&f3, 1).unwrap(), RingElem::from_int(&f3, 1, 2).unwrap());
        let f2 = FieldDesc::new(2, 1).unwrap();
        assert!(pick_xi(&f2, 3).unwrap().is_one());
        let f4 = FieldDesc::new(2, 2).unwrap();
        assert_eq!(pick_xi(&f4, 2).unwrap(), RingElem::generator(&f4, 2).unwrap());
    }

    #[test]
    fn inverse_and_precision() {
        let a = el(3, 2, 4, &[2, 5]);
        assert!((&a * &a.inv().unwrap()).is_one());
        assert!(el(3, 1, 4, &[3]).inv().is_err());
        let b = el(3, 1, 3, &[1]);
        assert_eq!(a.checked_add(&el(3, 2, 3, &[1])).unwrap_err(), Error::PrecisionMismatch(4, 3));
        assert!(a.checked_add(&b).is_err());
    }

    #[test]
    fn eta_is_multiplicative() {
        let field = FieldDesc::new(3, 2).unwrap();
        let units: Vec<_> = RingElem::all(&field, 1).unwrap().into_iter().filter(|a| a.is_unit()).collect();
        for a in &units {
            for b in &units {
                assert_eq!((a * b).eta().unwrap(), a.eta().unwrap() * b.eta().unwrap());
            }
        }
    }
}
