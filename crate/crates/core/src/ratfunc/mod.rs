//! Polynomials and rational functions in `t = q^-s` with exact rational
//! coefficients.

mod poly;
mod shape;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub use poly::Poly;
pub(crate) use poly::{fmt_coeff, rat};
pub use shape::{DenominatorShape, PoleFactor};

use crate::{Error, Result};

/// `num / den` kept in lowest terms. The lowest nonzero coefficient of the
/// denominator is 1, which means `den(0) = 1` whenever `t = 0` is not a pole.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
}

impl RationalFunction {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return RationalFunction { num, den: Poly::one() };
        }
        let g = Poly::gcd(&num, &den);
        let (num, den) = if g.degree() == Some(0) { (num, den) } else { (num.div_rem(&g).0, den.div_rem(&g).0) };
        let low = den.low_degree().expect("nonzero denominator");
        let s = den.coeff(low).recip();
        RationalFunction { num: num.scale(&s), den: den.scale(&s) }
    }

    /// Re-runs normalisation; a no-op on values built through this API.
    pub fn normalize(&self) -> Self {
        Self::normalized(self.num.clone(), self.den.clone())
    }

    pub fn zero() -> Self {
        RationalFunction { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn from_poly(p: Poly) -> Self {
        RationalFunction { num: p, den: Poly::one() }
    }

    /// `c·t^d`.
    pub fn monomial(c: BigRational, d: usize) -> Self {
        Self::from_poly(Poly::monomial(c, d))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RationalFunction { num: self.num.scale(c), den: self.den.clone() }
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: usize) -> Self {
        Self::normalized(self.num.shift(k), self.den.clone())
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(&self.num * &rhs.den, &self.den * &rhs.num))
    }

    pub fn eval(&self, x: &BigRational) -> Result<BigRational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.num.eval(x) / d)
    }

    /// First `k` Taylor coefficients at `t = 0`.
    pub fn series_prefix(&self, k: usize) -> Result<Vec<BigRational>> {
        let d0 = self.den.coeff(0);
        if d0.is_zero() {
            return Err(Error::Invalid("denominator vanishes at t = 0".into()));
        }
        let inv = d0.recip();
        let mut out: Vec<BigRational> = Vec::with_capacity(k);
        for n in 0..k {
            let mut c = self.num.coeff(n);
            for j in 1..=n.min(self.den.coeffs().len().saturating_sub(1)) {
                c -= self.den.coeff(j) * &out[n - j];
            }
            out.push(c * &inv);
        }
        Ok(out)
    }

    /// `P(t) = (1 - t·Z(t)) / (1 - t)`.
    pub fn poincare_from_zeta(z: &Self) -> Self {
        let one_minus_t = Poly::from_ints(&[1, -1]);
        let top = &Self::one() - &z.shift(1);
        Self::normalized(top.num, &top.den * &one_minus_t)
    }

    /// Inverse of [`RationalFunction::poincare_from_zeta`]:
    /// `Z(t) = (1 - (1 - t)·P(t)) / t`.
    pub fn zeta_from_poincare(p: &Self) -> Result<Self> {
        let one_minus_t = Self::from_poly(Poly::from_ints(&[1, -1]));
        let top = &Self::one() - &(&one_minus_t * p);
        let num = top.num.unshift(1).ok_or_else(|| Error::Invalid("P(0) must equal 1".into()))?;
        Ok(Self::normalized(num, top.den))
    }

    /// JSON-friendly form: numerator and denominator as lists of
    /// `[numerator, denominator]` decimal string pairs.
    pub fn coefficient_pairs(p: &Poly) -> Vec<[String; 2]> {
        p.coeffs().iter().map(|c| [c.numer().to_string(), c.denom().to_string()]).collect()
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.den == rhs.den {
            return RationalFunction::normalized(&self.num + &rhs.num, self.den.clone());
        }
        RationalFunction::normalized(&(&self.num * &rhs.den) + &(&rhs.num * &self.den), &self.den * &rhs.den)
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::normalized(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, rhs: RationalFunction) -> RationalFunction {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl std::iter::Sum for RationalFunction {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |a, b| &a + &b)
    }
}

/// Exact `q^e` for a possibly negative exponent.
pub fn q_pow(q: u64, e: i64) -> BigRational {
    let base = BigInt::from(q);
    let mag = num_traits::pow(base, e.unsigned_abs() as usize);
    if e >= 0 {
        BigRational::from_integer(mag)
    } else {
        BigRational::new(BigInt::one(), mag)
    }
}

/// `(1 - 1/q) / (1 - t/q)`, the zeta function of a single linear variable.
pub fn igr(q: u64) -> RationalFunction {
    let qi = q_pow(q, -1);
    RationalFunction::normalized(
        Poly::constant(BigRational::one() - &qi),
        Poly::from_coeffs(vec![BigRational::one(), -qi]),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rf(num: &[(i64, i64)], den: &[(i64, i64)]) -> RationalFunction {
        let p = |v: &[(i64, i64)]| Poly::from_coeffs(v.iter().map(|&(a, b)| rat(a, b)).collect());
        RationalFunction::new(p(num), p(den)).unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        let a = rf(&[(1, 1)], &[(1, 1), (-1, 1)]);
        assert_eq!(&a + &RationalFunction::zero(), a);
        let b = rf(&[(1, 1), (0, 1), (-1, 1)], &[(1, 1), (-1, 1)]);
        assert_eq!(b, RationalFunction::from_poly(Poly::from_ints(&[1, 1])));
        let g = igr(3);
        let gt = &g * &RationalFunction::from_poly(Poly::t());
        assert_eq!(gt, rf(&[(0, 1), (2, 3)], &[(1, 1), (-1, 3)]));
    }

    #[test]
    fn series_examples() {
        assert_eq!(igr(3).series_prefix(3).unwrap(), vec![rat(2, 3), rat(2, 9), rat(2, 27)]);
        let one = RationalFunction::one();
        assert_eq!(one.series_prefix(4).unwrap(), vec![rat(1, 1), rat(0, 1), rat(0, 1), rat(0, 1)]);
        let z = rf(&[(2, 3)], &[(1, 1), (0, 1), (-1, 3)]);
        assert_eq!(z.series_prefix(4).unwrap(), vec![rat(2, 3), rat(0, 1), rat(2, 9), rat(0, 1)]);
        assert_eq!(z.to_string(), "(2/3) / (1 - (1/3)*t^2)");
    }

    #[test]
    fn poincare_examples() {
        let one = RationalFunction::one();
        assert_eq!(RationalFunction::poincare_from_zeta(&one), one);
        let p = RationalFunction::poincare_from_zeta(&igr(3));
        assert_eq!(p, rf(&[(1, 1)], &[(1, 1), (-1, 3)]));
        let back = RationalFunction::zeta_from_poincare(&p).unwrap();
        assert_eq!(back, igr(3));
    }

    #[test]
    fn division_by_zero() {
        assert_eq!(RationalFunction::one().checked_div(&RationalFunction::zero()), Err(Error::DivisionByZero));
        assert!(RationalFunction::new(Poly::one(), Poly::zero()).is_err());
    }
}
