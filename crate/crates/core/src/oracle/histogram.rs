use num_bigint::BigInt;
use num_rational::BigRational;

use crate::exec::Exec;
use crate::genfun::ModularGF;
use crate::padic::{Exact, ResidueRing, RingElem};
use crate::quadform::QuadPoly;
use crate::{Error, Result};

/// Largest domain `q^(nk)` that [`count_exhaustive`] enumerates.
pub const EXHAUSTIVE_GUARD: u128 = 100_000_000;

/// Bound on `chunks * ring size` for the per-chunk count buffers.
pub(crate) const CHUNK_CELLS: u64 = 1 << 20;

/// A polynomial with coefficients reduced to indices of `R/p^k`, so that
/// evaluation never allocates.
#[derive(Clone, Debug)]
pub struct CompiledPoly {
    ring: ResidueRing,
    diag: Vec<u64>,
    lin: Vec<u64>,
    cross: Vec<(usize, usize, u64)>,
    c: u64,
}

impl CompiledPoly {
    pub fn new(f: &QuadPoly, k: u32) -> Result<Self> {
        let ring = ResidueRing::new(f.field(), k)?;
        let idx = |e: &Exact| -> Result<u64> {
            if !e.is_integral() {
                return Err(Error::Invalid("counting needs p-integral coefficients".into()));
            }
            ring.from_elem(&e.to_ring(k.max(1))?)
        };
        let (diag, cross) = f.monomials();
        let diag = diag.iter().map(idx).collect::<Result<_>>()?;
        let lin = f.linear().iter().map(idx).collect::<Result<_>>()?;
        let cross = cross.iter().map(|(i, j, e)| Ok((*i, *j, idx(e)?))).collect::<Result<_>>()?;
        let c = idx(f.constant())?;
        Ok(CompiledPoly { ring, diag, lin, cross, c })
    }

    pub fn ring(&self) -> &ResidueRing {
        &self.ring
    }

    pub fn n(&self) -> usize {
        self.lin.len()
    }

    pub fn eval(&self, x: &[u64]) -> u64 {
        let r = &self.ring;
        let mut acc = self.c;
        for (i, &xi) in x.iter().enumerate() {
            if self.diag[i] != 0 {
                acc = r.add(acc, r.mul(self.diag[i], r.mul(xi, xi)));
            }
            if self.lin[i] != 0 {
                acc = r.add(acc, r.mul(self.lin[i], xi));
            }
        }
        for &(i, j, e) in &self.cross {
            acc = r.add(acc, r.mul(e, r.mul(x[i], x[j])));
        }
        acc
    }
}

/// Exact value counts of a polynomial over `(R/p^k)^n`, indexed by value.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ValueHistogram {
    ring: ResidueRing,
    n: usize,
    counts: Vec<u128>,
}

impl ValueHistogram {
    pub fn from_counts(ring: ResidueRing, n: usize, counts: Vec<u128>) -> Result<Self> {
        if counts.len() as u64 != ring.size() {
            return Err(Error::Invalid("histogram length differs from the ring size".into()));
        }
        Ok(ValueHistogram { ring, n, counts })
    }

    /// The histogram of the zero form in no variables: one count at 0.
    pub fn delta(ring: ResidueRing) -> Self {
        let mut counts = vec![0; ring.size() as usize];
        counts[0] = 1;
        ValueHistogram { ring, n: 0, counts }
    }

    pub fn ring(&self) -> &ResidueRing {
        &self.ring
    }

    pub fn k(&self) -> u32 {
        self.ring.k()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn counts(&self) -> &[u128] {
        &self.counts
    }

    pub fn count(&self, v: &RingElem) -> Result<u128> {
        Ok(self.counts[self.ring.from_elem(v)? as usize])
    }

    /// `q^(nk)`.
    pub fn domain_size(&self) -> u128 {
        self.counts.iter().sum()
    }

    /// `N_k`: the number of zeros.
    pub fn zeros(&self) -> u128 {
        self.counts[0]
    }

    pub fn to_modular(&self) -> Result<ModularGF> {
        let d = BigRational::from_integer(BigInt::from(self.domain_size()));
        let coeffs = self.counts.iter().map(|&c| BigRational::from_integer(BigInt::from(c)) / &d).collect();
        ModularGF::from_coeffs(self.ring.field(), self.k(), coeffs)
    }

    /// Histogram of the sum over disjoint variables.
    pub fn convolve(&self, other: &Self) -> Result<Self> {
        if self.ring != other.ring {
            return Err(Error::PrecisionMismatch(self.k(), other.k()));
        }
        let mut counts = vec![0u128; self.counts.len()];
        for (a, &x) in self.counts.iter().enumerate().filter(|(_, x)| **x != 0) {
            for (b, &y) in other.counts.iter().enumerate().filter(|(_, y)| **y != 0) {
                counts[self.ring.add(a as u64, b as u64) as usize] += x * y;
            }
        }
        Ok(ValueHistogram { ring: self.ring.clone(), n: self.n + other.n, counts })
    }
}

/// Counts by evaluating `f` at every point of `(R/p^k)^n`, split over the
/// first coordinate.
pub fn count_exhaustive(f: &QuadPoly, k: u32, exec: Exec) -> Result<ValueHistogram> {
    let cp = CompiledPoly::new(f, k)?;
    let ring = cp.ring().clone();
    let n = f.n();
    let size = ring.size();
    field_guard(f, k)?;
    if n == 0 {
        let mut counts = vec![0u128; size as usize];
        counts[cp.eval(&[]) as usize] = 1;
        return ValueHistogram::from_counts(ring, 0, counts);
    }
    let rest = size.pow(n as u32 - 1);
    // one buffer of `size` counts per chunk, so cap the number of chunks
    let ranges = Exec::ranges(size, CHUNK_CELLS / size);
    let parts = exec.map(ranges.len(), |r| {
        let mut counts = vec![0u128; size as usize];
        let mut x = vec![0u64; n];
        for first in ranges[r].clone() {
            x[0] = first;
            for _ in 0..rest {
                counts[cp.eval(&x) as usize] += 1;
                for slot in x.iter_mut().skip(1) {
                    *slot += 1;
                    if *slot < size {
                        break;
                    }
                    *slot = 0;
                }
            }
        }
        counts
    });
    let mut counts = vec![0u128; size as usize];
    for part in parts {
        for (c, d) in counts.iter_mut().zip(part) {
            *c += d;
        }
    }
    ValueHistogram::from_counts(ring, n, counts)
}

fn field_guard(f: &QuadPoly, k: u32) -> Result<()> {
    f.field()
        .q_pow(k * f.n() as u32)
        .filter(|&s| s <= EXHAUSTIVE_GUARD)
        .map(|_| ())
        .ok_or_else(|| Error::SizeGuard(format!("{} variables at level {k}", f.n())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genfun::modular_gf;
    use crate::padic::FieldDesc;

    #[test]
    fn small_counts() {
        let f = FieldDesc::new(3, 1).unwrap();
        let x = QuadPoly::from_ints(&f, &[vec![0]], &[1], 0).unwrap();
        assert_eq!(count_exhaustive(&x, 2, Exec::Sequential).unwrap().counts(), &[1; 9]);
        let x2 = QuadPoly::from_ints(&f, &[vec![1]], &[], 0).unwrap();
        let h = count_exhaustive(&x2, 1, Exec::Parallel).unwrap();
        assert_eq!(h.counts(), &[1, 2, 0]);
        let one = QuadPoly::from_ints(&f, &[], &[], 1).unwrap();
        let h1 = count_exhaustive(&one, 1, Exec::Sequential).unwrap();
        assert_eq!((h1.counts(), h1.n()), (&[0u128, 1, 0][..], 0));
        let sum = count_exhaustive(&x2.direct_sum(&x2).unwrap(), 1, Exec::Sequential).unwrap();
        assert_eq!(h.convolve(&h).unwrap(), sum);
        let d = ValueHistogram::delta(h.ring().clone());
        assert_eq!(h.convolve(&d).unwrap().counts(), h.counts());
        let hx = count_exhaustive(&x, 1, Exec::Sequential).unwrap();
        assert_eq!(hx.convolve(&hx).unwrap().counts(), &[3, 3, 3]);
    }

    #[test]
    fn agrees_with_modular_gf() {
        let f = FieldDesc::new(2, 2).unwrap();
        let g = QuadPoly::from_ints(&f, &[vec![1, 1], vec![1, 3]], &[2, 0], 5).unwrap();
        for k in 1..=3 {
            let h = count_exhaustive(&g, k, Exec::Parallel).unwrap();
            assert_eq!(h.to_modular().unwrap(), modular_gf(&g, k, Exec::Sequential).unwrap());
        }
    }

    #[test]
    fn guard() {
        let f = FieldDesc::new(5, 1).unwrap();
        let g = QuadPoly::from_ints(&f, &[vec![1, 0], vec![0, 1]], &[], 0).unwrap();
        assert!(matches!(count_exhaustive(&g, 7, Exec::Sequential), Err(Error::SizeGuard(_))));
    }
}
