use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{q_pow, Poly};

/// A recognised factor of a reduced zeta denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PoleFactor {
    /// `1 - t/q`
    Simple,
    /// `1 - t/q^(r/2)`, `r` even
    HalfMinus(u32),
    /// `1 + t/q^(r/2)`, `r` even
    HalfPlus(u32),
    /// `1 - t^2/q^r`
    Square(u32),
    /// Anything left after trial division by the candidates above.
    Other(Poly),
}

impl PoleFactor {
    pub fn poly(&self, q: u64) -> Poly {
        let one = BigRational::one();
        match self {
            PoleFactor::Simple => Poly::from_coeffs(vec![one, -q_pow(q, -1)]),
            PoleFactor::HalfMinus(r) => Poly::from_coeffs(vec![one, -q_pow(q, -(*r as i64) / 2)]),
            PoleFactor::HalfPlus(r) => Poly::from_coeffs(vec![one, q_pow(q, -(*r as i64) / 2)]),
            PoleFactor::Square(r) => Poly::from_coeffs(vec![one, BigRational::zero(), -q_pow(q, -(*r as i64))]),
            PoleFactor::Other(p) => p.clone(),
        }
    }
}

/// Factorisation of a denominator over the candidate pole set for a form of
/// rank `r` over a residue field of order `q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenominatorShape {
    pub q: u64,
    pub r: u32,
    pub factors: Vec<PoleFactor>,
}

impl DenominatorShape {
    /// Trial division in a fixed order: `1 - t/q`, `1 - t^2/q^r`, then the
    /// two half-rank linear factors.
    pub fn recognize(den: &Poly, q: u64, r: u32) -> Self {
        let mut rest = den.clone();
        let mut factors = Vec::new();
        let mut candidates = vec![PoleFactor::Simple];
        if r > 0 {
            candidates.push(PoleFactor::Square(r));
            if r.is_multiple_of(2) {
                candidates.push(PoleFactor::HalfMinus(r));
                candidates.push(PoleFactor::HalfPlus(r));
            }
        }
        for c in candidates {
            let p = c.poly(q);
            loop {
                if rest.degree().unwrap_or(0) < p.degree().unwrap_or(0) {
                    break;
                }
                let (quot, rem) = rest.div_rem(&p);
                if !rem.is_zero() {
                    break;
                }
                rest = quot;
                factors.push(c.clone());
            }
        }
        if !rest.is_one() {
            factors.push(PoleFactor::Other(rest));
        }
        DenominatorShape { q, r, factors }
    }

    pub fn expand(&self) -> Poly {
        self.factors.iter().fold(Poly::one(), |acc, f| &acc * &f.poly(self.q))
    }
}

impl fmt::Display for DenominatorShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (i, fac) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, " * ")?;
            }
            write!(f, "({})", fac.poly(self.q))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratfunc::rat;

    #[test]
    fn recognizes_products() {
        let q = 3;
        let den = &PoleFactor::Simple.poly(q) * &PoleFactor::Square(3).poly(q);
        let s = DenominatorShape::recognize(&den, q, 3);
        assert_eq!(s.factors, vec![PoleFactor::Simple, PoleFactor::Square(3)]);
        assert_eq!(s.expand(), den);
        let den2 = &PoleFactor::Simple.poly(q) * &PoleFactor::HalfPlus(4).poly(q);
        let s2 = DenominatorShape::recognize(&den2, q, 4);
        assert_eq!(s2.factors, vec![PoleFactor::Simple, PoleFactor::HalfPlus(4)]);
        let odd = Poly::from_coeffs(vec![rat(1, 1), rat(1, 7)]);
        let s3 = DenominatorShape::recognize(&odd, q, 2);
        assert_eq!(s3.expand(), odd);
    }
}
