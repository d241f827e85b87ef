use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{FieldDesc, RingElem};
use crate::ratfunc::Poly;
use crate::{Error, Result};

/// An exact element of the unramified number field `Q[x]/(m(x))`.
///
/// Used where congruence arithmetic would blur the difference between zero
/// and "zero to the working precision", e.g. during Jordan elimination.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Exact {
    field: FieldDesc,
    coeffs: Vec<BigRational>,
}

fn v_p_int(n: &BigInt, p: u64) -> u32 {
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut v = 0;
    while (&n % &p).is_zero() {
        n /= &p;
        v += 1;
    }
    v
}

/// `v_p` of a nonzero rational.
pub fn v_p_rat(r: &BigRational, p: u64) -> i64 {
    v_p_int(r.numer(), p) as i64 - v_p_int(r.denom(), p) as i64
}

impl Exact {
    pub fn from_rationals(field: &FieldDesc, coeffs: Vec<BigRational>) -> Self {
        let poly = Poly::from_coeffs(coeffs);
        Self::from_poly(field, &poly)
    }

    fn modulus_poly(field: &FieldDesc) -> Poly {
        Poly::from_ints(field.modulus())
    }

    fn from_poly(field: &FieldDesc, poly: &Poly) -> Self {
        let r = poly.div_rem(&Self::modulus_poly(field)).1;
        let mut coeffs = r.coeffs().to_vec();
        coeffs.resize(field.f(), BigRational::zero());
        Exact { field: field.clone(), coeffs }
    }

    fn poly(&self) -> Poly {
        Poly::from_coeffs(self.coeffs.clone())
    }

    pub fn from_ints(field: &FieldDesc, coeffs: &[i64]) -> Self {
        Self::from_rationals(field, coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    pub fn from_int(field: &FieldDesc, n: i64) -> Self {
        Self::from_ints(field, &[n])
    }

    pub fn from_bigint(field: &FieldDesc, n: BigInt) -> Self {
        Self::from_rationals(field, vec![BigRational::from_integer(n)])
    }

    /// The standard representative of a ring element (digits in `[0, p^k)`).
    pub fn from_ring(a: &RingElem) -> Self {
        let coeffs = a.coeffs().iter().map(|&c| BigRational::from_integer(c.into())).collect();
        Self::from_rationals(a.field(), coeffs)
    }

    pub fn zero(field: &FieldDesc) -> Self {
        Self::from_ints(field, &[])
    }

    pub fn one(field: &FieldDesc) -> Self {
        Self::from_int(field, 1)
    }

    pub fn field(&self) -> &FieldDesc {
        &self.field
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// `p`-adic valuation (`None` for zero). The power basis is integral
    /// because the modulus is irreducible mod `p`.
    pub fn valuation(&self) -> Option<i64> {
        let p = self.field.p();
        self.coeffs.iter().filter(|c| !c.is_zero()).map(|c| v_p_rat(c, p)).min()
    }

    pub fn is_integral(&self) -> bool {
        self.valuation().is_none_or(|v| v >= 0)
    }

    pub fn is_unit(&self) -> bool {
        self.valuation() == Some(0)
    }

    /// Multiplication by `p^e` for any integer `e`.
    pub fn mul_p_pow(&self, e: i64) -> Self {
        let p = BigInt::from(self.field.p());
        let s = if e >= 0 {
            BigRational::from_integer(num_traits::pow(p, e as usize))
        } else {
            BigRational::new(BigInt::one(), num_traits::pow(p, (-e) as usize))
        };
        self.scale(&s)
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        Exact { field: self.field.clone(), coeffs: self.coeffs.iter().map(|c| c * s).collect() }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (g, s, _) = Poly::ext_gcd(&self.poly(), &Self::modulus_poly(&self.field));
        // g is a nonzero constant since the modulus is irreducible over Q
        let g0 = g.coeff(0);
        Ok(Self::from_poly(&self.field, &s.scale(&g0.recip())))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    /// Reduction into `R/p^k`; requires `p`-integrality.
    pub fn to_ring(&self, k: u32) -> Result<RingElem> {
        if !self.is_integral() {
            return Err(Error::Invalid(format!("{self} is not p-integral")));
        }
        let m = BigInt::from(self.field.p_pow(k)?);
        let coeffs: Vec<i64> = self
            .coeffs
            .iter()
            .map(|c| {
                let d = c.denom().mod_floor(&m);
                let inv = mod_inverse(&d, &m);
                (c.numer() * inv).mod_floor(&m).to_i64().expect("reduced below p^k")
            })
            .collect();
        RingElem::new(&self.field, k, &coeffs)
    }

    /// The rational value when the element lies in `Q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    if m.is_one() {
        return BigInt::zero();
    }
    let e = a.extended_gcd(m);
    debug_assert!(e.gcd.is_one());
    e.x.mod_floor(m)
}

impl Add for &Exact {
    type Output = Exact;
    fn add(self, rhs: &Exact) -> Exact {
        Exact { field: self.field.clone(), coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &Exact {
    type Output = Exact;
    fn sub(self, rhs: &Exact) -> Exact {
        Exact { field: self.field.clone(), coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect() }
    }
}

impl Mul for &Exact {
    type Output = Exact;
    fn mul(self, rhs: &Exact) -> Exact {
        Exact::from_poly(&self.field, &(&self.poly() * &rhs.poly()))
    }
}

impl Neg for &Exact {
    type Output = Exact;
    fn neg(self) -> Exact {
        Exact { field: self.field.clone(), coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }
}

impl fmt::Display for Exact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.as_rational() {
            return write!(f, "{r}");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("{c}"),
                1 => format!("({c})*x"),
                _ => format!("({c})*x^{i}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl fmt::Debug for Exact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Exact({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_and_valuation() {
        let field = FieldDesc::new(3, 2).unwrap();
        let a = Exact::from_ints(&field, &[6, 3]);
        assert_eq!(a.valuation(), Some(1));
        let b = a.inv().unwrap();
        assert!((&a * &b).as_rational().unwrap().is_one());
        assert_eq!(b.valuation(), Some(-1));
        assert_eq!(Exact::zero(&field).valuation(), None);
    }

    #[test]
    fn reduction_matches_ring() {
        let field = FieldDesc::new(2, 2).unwrap();
        let a = RingElem::new(&field, 4, &[3, 5]).unwrap();
        let e = Exact::from_ring(&a);
        assert_eq!(e.to_ring(4).unwrap(), a);
        let half = Exact::from_int(&field, 3).inv().unwrap();
        let h = half.to_ring(4).unwrap();
        assert!((&h * &RingElem::from_int(&field, 4, 3).unwrap()).is_one());
        assert!(Exact::from_int(&field, 2).inv().unwrap().to_ring(3).is_err());
    }
}
