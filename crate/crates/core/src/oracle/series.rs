use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::histogram::{count_exhaustive, ValueHistogram};
use super::orbit::{block_law, orbit_space};
use crate::exec::Exec;
use crate::padic::ResidueRing;
use crate::quadform::QuadPoly;
use crate::ratfunc::RationalFunction;
use crate::Result;

/// Whether the law of `g` is unchanged when values are multiplied by unit
/// squares, and small enough for [`block_law`].
fn is_invariant(g: &QuadPoly) -> bool {
    match g.n() {
        1 => g.is_homogeneous() || g.matrix()[0][0].is_zero(),
        2 => g.is_homogeneous(),
        _ => false,
    }
}

/// `mu_j = vol{x : f(x) = 0 mod p^j}` for `j = 0..=K`.
pub fn zero_masses(f: &QuadPoly, k_max: u32, exec: Exec) -> Result<Vec<BigRational>> {
    let field = f.field();
    let mut invariant = Vec::new();
    let mut dense_vars = Vec::new();
    for comp in f.components() {
        let g = f.restrict(&comp);
        if is_invariant(&g) {
            invariant.push(g);
        } else {
            dense_vars.extend(comp);
        }
    }
    dense_vars.sort_unstable();
    let dense = f.restrict(&dense_vars);
    let mut out = vec![BigRational::one()];
    for j in 1..=k_max {
        let space = orbit_space(field, j)?;
        let mut law = space.point_mass(0);
        for g in &invariant {
            law = space.convolve(&law, &block_law(g, j)?, exec);
        }
        let hist = if dense.n() == 0 {
            ValueHistogram::delta(ResidueRing::new(field, j)?)
        } else {
            count_exhaustive(&dense, j, exec)?
        };
        let ring = &space.ring;
        let c = ring.from_elem(&f.constant().to_ring(j)?)?;
        let mut mu = BigRational::zero();
        for (a, &n) in hist.counts().iter().enumerate().filter(|(_, n)| **n != 0) {
            let target = ring.neg(ring.add(a as u64, c));
            mu += space.density(&law, target) * BigRational::from_integer(BigInt::from(n));
        }
        out.push(mu / BigRational::from_integer(BigInt::from(hist.domain_size())));
    }
    Ok(out)
}

/// The first `K` coefficients of `Z_f(t) = sum_k vol(v(f) = k) t^k`.
pub fn zeta_series_oracle(f: &QuadPoly, k_max: u32, exec: Exec) -> Result<Vec<BigRational>> {
    let mu = zero_masses(f, k_max, exec)?;
    Ok(mu.windows(2).map(|w| &w[0] - &w[1]).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerifyStatus {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub status: VerifyStatus,
    pub first_mismatch: Option<usize>,
    pub oracle_prefix: Vec<BigRational>,
    pub closed_form_prefix: Vec<BigRational>,
}

/// Compares the oracle series of `f` with the expansion of `z`.
pub fn verify(f: &QuadPoly, z: &RationalFunction, k_max: u32, exec: Exec) -> Result<VerifyReport> {
    let oracle_prefix = zeta_series_oracle(f, k_max, exec)?;
    let closed_form_prefix = z.series_prefix(k_max as usize)?;
    let first_mismatch = oracle_prefix.iter().zip(&closed_form_prefix).position(|(a, b)| a != b);
    let status = if first_mismatch.is_none() { VerifyStatus::Pass } else { VerifyStatus::Fail };
    Ok(VerifyReport { status, first_mismatch, oracle_prefix, closed_form_prefix })
}

/// `q^ceil(n(k-1)/2)` divides `N_k(f)`.
pub fn segers_holds(f: &QuadPoly, k: u32, exec: Exec) -> Result<bool> {
    let n_k = count_exhaustive(f, k, exec)?.zeros();
    let e = (f.n() as u32 * k.saturating_sub(1)).div_ceil(2);
    let m = u128::from(f.field().q()).pow(e);
    Ok(n_k % m == 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::FieldDesc;
    use crate::ratfunc::{rat, Poly};

    fn dense_prefix(f: &QuadPoly, k: u32) -> Vec<BigRational> {
        let mut mu = vec![BigRational::one()];
        for j in 1..=k {
            let h = count_exhaustive(f, j, Exec::Sequential).unwrap();
            mu.push(BigRational::new(BigInt::from(h.zeros()), BigInt::from(h.domain_size())));
        }
        mu.windows(2).map(|w| &w[0] - &w[1]).collect()
    }

    #[test]
    fn known_values() {
        let f3 = FieldDesc::new(3, 1).unwrap();
        let x2 = QuadPoly::from_ints(&f3, &[vec![1]], &[], 0).unwrap();
        assert_eq!(
            zeta_series_oracle(&x2, 4, Exec::Sequential).unwrap(),
            vec![rat(2, 3), rat(0, 1), rat(2, 9), rat(0, 1)]
        );
        let one = QuadPoly::from_ints(&f3, &[], &[], 1).unwrap();
        assert_eq!(
            zeta_series_oracle(&one, 4, Exec::Sequential).unwrap(),
            vec![rat(1, 1), rat(0, 1), rat(0, 1), rat(0, 1)]
        );
        let f2 = FieldDesc::new(2, 1).unwrap();
        let hyp = QuadPoly::from_ints(&f2, &[vec![0, 1], vec![1, 0]], &[], 0).unwrap();
        let s = zeta_series_oracle(&hyp, 3, Exec::Sequential).unwrap();
        assert_eq!(s, vec![rat(0, 1), rat(1, 4), rat(1, 4)]);
    }

    #[test]
    fn blockwise_equals_dense() {
        for (p, fdeg) in [(3, 1), (2, 1), (2, 2), (5, 1)] {
            let f = FieldDesc::new(p, fdeg).unwrap();
            let polys = [
                QuadPoly::from_ints(&f, &[vec![1, 0, 0], vec![0, 0, 1], vec![0, 1, 0]], &[0, 0, 0], 0).unwrap(),
                QuadPoly::from_ints(&f, &[vec![3, 0], vec![0, 0]], &[0, 4], 6).unwrap(),
                QuadPoly::from_ints(&f, &[vec![2, 1], vec![1, 2]], &[0, 0], 0).unwrap(),
                QuadPoly::from_ints(&f, &[vec![1, 0], vec![0, 1]], &[1, 0], 3).unwrap(),
                QuadPoly::from_ints(&f, &[vec![0, 0], vec![0, 0]], &[0, 0], 0).unwrap(),
            ];
            for g in &polys {
                let k = if f.q() >= 4 { 3 } else { 4 };
                assert_eq!(zeta_series_oracle(g, k, Exec::Parallel).unwrap(), dense_prefix(g, k), "{f} {g}");
            }
        }
    }

    #[test]
    fn verify_reports() {
        let f3 = FieldDesc::new(3, 1).unwrap();
        let x2 = QuadPoly::from_ints(&f3, &[vec![1]], &[], 0).unwrap();
        let z =
            RationalFunction::new(Poly::constant(rat(2, 3)), Poly::from_coeffs(vec![rat(1, 1), rat(0, 1), rat(-1, 3)]))
                .unwrap();
        assert_eq!(verify(&x2, &z, 8, Exec::Parallel).unwrap().status, VerifyStatus::Pass);
        let x = QuadPoly::from_ints(&f3, &[vec![0]], &[1], 0).unwrap();
        let r = verify(&x, &RationalFunction::one(), 2, Exec::Sequential).unwrap();
        assert_eq!((r.status, r.first_mismatch), (VerifyStatus::Fail, Some(0)));
        let one = QuadPoly::from_ints(&f3, &[], &[], 1).unwrap();
        assert_eq!(verify(&one, &RationalFunction::one(), 5, Exec::Sequential).unwrap().status, VerifyStatus::Pass);
    }

    #[test]
    fn segers_bound() {
        let f3 = FieldDesc::new(3, 1).unwrap();
        let g = QuadPoly::from_ints(&f3, &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 3]], &[], 0).unwrap();
        for k in 1..=4 {
            assert!(segers_holds(&g, k, Exec::Parallel).unwrap());
        }
    }
}
