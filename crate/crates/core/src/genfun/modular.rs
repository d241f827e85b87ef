use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{CosetCombination, CosetTerm};
use crate::exec::Exec;
use crate::padic::{Exact, FieldDesc, ResidueRing, RingElem};
use crate::quadform::QuadPoly;
use crate::ratfunc::fmt_coeff;
use crate::{Error, Result};

/// Largest `q^(nk)` that [`modular_gf`] will enumerate.
pub const MODULAR_GUARD: u128 = 100_000_000;

/// A level-`k` generating function `sum_B F_B gamma^B` over `R/p^k`, dense
/// in the digit-order index of `B`.
#[derive(Clone, PartialEq, Eq)]
pub struct ModularGF {
    ring: ResidueRing,
    coeffs: Vec<BigRational>,
}

impl ModularGF {
    pub fn from_coeffs(field: &FieldDesc, k: u32, coeffs: Vec<BigRational>) -> Result<Self> {
        let ring = ResidueRing::new(field, k)?;
        if coeffs.len() as u64 != ring.size() {
            return Err(Error::Invalid(format!("{} coefficients for a ring of size {}", coeffs.len(), ring.size())));
        }
        Ok(ModularGF { ring, coeffs })
    }

    /// `gamma^a`.
    pub fn point(a: &RingElem) -> Result<Self> {
        let ring = ResidueRing::new(a.field(), a.k())?;
        let mut coeffs = vec![BigRational::zero(); ring.size() as usize];
        coeffs[ring.from_elem(a)? as usize] = BigRational::one();
        Ok(ModularGF { ring, coeffs })
    }

    pub fn field(&self) -> &FieldDesc {
        self.ring.field()
    }

    pub fn k(&self) -> u32 {
        self.ring.k()
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, a: &RingElem) -> Result<&BigRational> {
        Ok(&self.coeffs[self.ring.from_elem(a)? as usize])
    }

    /// `F(1)`.
    pub fn mass(&self) -> BigRational {
        self.coeffs.iter().sum()
    }

    /// Group-ring product: additive convolution over `R/p^k`.
    pub fn gr_mul(&self, other: &Self) -> Result<Self> {
        if self.field() != other.field() || self.k() != other.k() {
            return Err(Error::PrecisionMismatch(self.k(), other.k()));
        }
        let n = self.coeffs.len();
        let mut out = vec![BigRational::zero(); n];
        for (a, x) in self.coeffs.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (b, y) in other.coeffs.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                out[self.ring.add(a as u64, b as u64) as usize] += x * y;
            }
        }
        Ok(ModularGF { ring: self.ring.clone(), coeffs: out })
    }

    /// The image in level `j <= k`.
    pub fn project(&self, j: u32) -> Result<Self> {
        if j > self.k() {
            return Err(Error::PrecisionMismatch(j, self.k()));
        }
        let lower = ResidueRing::new(self.field(), j)?;
        let mut coeffs = vec![BigRational::zero(); lower.size() as usize];
        for (a, x) in self.coeffs.iter().enumerate() {
            coeffs[self.ring.reduce_to(&lower, a as u64) as usize] += x;
        }
        Ok(ModularGF { ring: lower, coeffs })
    }

    /// `F_{p^j R}`: the mass on values divisible by `p^j`, for `j <= k`.
    pub fn ideal_mass(&self, j: u32) -> BigRational {
        self.coeffs.iter().enumerate().filter(|(a, _)| self.ring.val(*a as u64) >= j).map(|(_, x)| x).sum()
    }

    /// The same element as a combination of level-`k` cosets.
    pub fn to_combination(&self) -> Result<CosetCombination> {
        let mut out = CosetCombination::zero(self.field());
        for (a, x) in self.coeffs.iter().enumerate() {
            out.push(CosetTerm::Coset(self.ring.to_elem(a as u64)), x.clone());
        }
        Ok(out)
    }

    /// `value : mass` lines for the nonzero coefficients.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (a, x) in self.coeffs.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            out.push_str(&format!("{} : {}\n", self.ring.to_elem(a as u64), fmt_coeff(x)));
        }
        out
    }
}

impl fmt::Debug for ModularGF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ModularGF[{}, k={}]\n{}", self.field(), self.k(), self.render())
    }
}

/// The level-`k` generating function of `f`, by evaluating `f` at every
/// point of `(R/p^k)^n`.
pub fn modular_gf(f: &QuadPoly, k: u32, exec: Exec) -> Result<ModularGF> {
    let field = f.field();
    let n = f.n() as u32;
    let size = field.q_pow(k).ok_or_else(|| Error::SizeGuard("ring too large".into()))?;
    let total = field
        .q_pow(k * n)
        .filter(|&s| s <= MODULAR_GUARD)
        .ok_or_else(|| Error::SizeGuard(format!("{n} variables at level {k} exceed {MODULAR_GUARD} points")))?;
    let ring = ResidueRing::new(field, k)?;
    // coefficients reduced once to ring indices; the loop is pure index
    // arithmetic
    let at = |e: &Exact| ring.from_elem(&e.to_ring(k)?);
    let (diag, cross) = f.monomials();
    let diag = diag.iter().map(at).collect::<Result<Vec<_>>>()?;
    let lin = f.linear().iter().map(at).collect::<Result<Vec<_>>>()?;
    let cross = cross.iter().map(|(i, j, e)| Ok((*i, *j, at(e)?))).collect::<Result<Vec<_>>>()?;
    let c = at(f.constant())?;
    let r = &ring;
    let eval = |x: &[u64]| -> u64 {
        let mut acc = c;
        for (i, &v) in x.iter().enumerate() {
            acc = r.add(acc, r.mul(r.add(r.mul(diag[i], v), lin[i]), v));
        }
        for &(i, j, e) in &cross {
            acc = r.add(acc, r.mul(e, r.mul(x[i], x[j])));
        }
        acc
    };
    // contiguous ranges of the first coordinate; each enumerates the rest
    let (firsts, rest) = if n == 0 { (1, 1) } else { (size as u64, (total / size) as u64) };
    let ranges = Exec::ranges(firsts, (1 << 20) / size as u64);
    let partial = exec.map(ranges.len(), |r| {
        let mut counts = vec![0u64; size as usize];
        let mut x = vec![0u64; n as usize];
        for first in ranges[r].clone() {
            if n > 0 {
                x[0] = first;
            }
            for _ in 0..rest {
                counts[eval(&x) as usize] += 1;
                for slot in x.iter_mut().skip(1) {
                    *slot += 1;
                    if *slot < size as u64 {
                        break;
                    }
                    *slot = 0;
                }
            }
        }
        counts
    });
    let mut counts = vec![0u64; size as usize];
    for part in partial {
        for (c, d) in counts.iter_mut().zip(part) {
            *c += d;
        }
    }
    let denom = BigRational::from_integer(total.into());
    let coeffs = counts.into_iter().map(|c| BigRational::from_integer(c.into()) / &denom).collect();
    ModularGF::from_coeffs(field, k, coeffs)
}

/// Coefficients of the truncated zeta series from a projection-consistent
/// family `F_0, ..., F_K`: `t^j` gets `F_{p^j R} - F_{p^{j+1} R}` read at
/// level `j + 1`.
pub fn ig_truncated(family: &[ModularGF]) -> Result<Vec<BigRational>> {
    for (j, w) in family.windows(2).enumerate() {
        if w[0].k() as usize != j || w[1].k() as usize != j + 1 || w[1].project(j as u32)? != w[0] {
            return Err(Error::Inconsistent(format!("family is not projection-consistent at level {j}")));
        }
    }
    if family.first().is_some_and(|f| f.k() != 0) {
        return Err(Error::Inconsistent("family must start at level 0".into()));
    }
    Ok((1..family.len()).map(|j| family[j].ideal_mass(j as u32 - 1) - family[j].ideal_mass(j as u32)).collect())
}

/// The family `modular_gf(f, 0..=K)`.
pub fn modular_family(f: &QuadPoly, k_max: u32, exec: Exec) -> Result<Vec<ModularGF>> {
    let top = modular_gf(f, k_max, exec)?;
    (0..=k_max).map(|j| top.project(j)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratfunc::rat;

    fn f3() -> FieldDesc {
        FieldDesc::new(3, 1).unwrap()
    }

    #[test]
    fn small_histograms() {
        let f = f3();
        let x = QuadPoly::from_ints(&f, &[vec![0]], &[1], 0).unwrap();
        let g = modular_gf(&x, 1, Exec::Sequential).unwrap();
        assert_eq!(g.coeffs(), &[rat(1, 3), rat(1, 3), rat(1, 3)]);
        let x2 = QuadPoly::from_ints(&f, &[vec![1]], &[], 0).unwrap();
        let g = modular_gf(&x2, 1, Exec::Sequential).unwrap();
        assert_eq!(g.coeffs(), &[rat(1, 3), rat(2, 3), rat(0, 1)]);
        let f2 = FieldDesc::new(2, 1).unwrap();
        let hyp = QuadPoly::from_ints(&f2, &[vec![0, 1], vec![1, 0]], &[], 0).unwrap();
        assert_eq!(modular_gf(&hyp, 1, Exec::Parallel).unwrap().coeffs(), &[rat(1, 1), rat(0, 1)]);
    }

    #[test]
    fn truncated_series() {
        let f = f3();
        let x = QuadPoly::from_ints(&f, &[vec![0]], &[1], 0).unwrap();
        let s = ig_truncated(&modular_family(&x, 3, Exec::Sequential).unwrap()).unwrap();
        assert_eq!(s, vec![rat(2, 3), rat(2, 9), rat(2, 27)]);
        let x2 = QuadPoly::from_ints(&f, &[vec![1]], &[], 0).unwrap();
        let s = ig_truncated(&modular_family(&x2, 4, Exec::Sequential).unwrap()).unwrap();
        assert_eq!(s, vec![rat(2, 3), rat(0, 1), rat(2, 9), rat(0, 1)]);
        let one = QuadPoly::from_ints(&f, &[], &[], 1).unwrap();
        let s = ig_truncated(&modular_family(&one, 3, Exec::Sequential).unwrap()).unwrap();
        assert_eq!(s, vec![rat(1, 1), rat(0, 1), rat(0, 1)]);
    }

    #[test]
    fn convolution_is_sum_product() {
        let f = f3();
        let x2 = QuadPoly::from_ints(&f, &[vec![1]], &[], 0).unwrap();
        let sum = x2.direct_sum(&x2).unwrap();
        let a = modular_gf(&x2, 2, Exec::Sequential).unwrap();
        assert_eq!(a.gr_mul(&a).unwrap(), modular_gf(&sum, 2, Exec::Sequential).unwrap());
    }
}
