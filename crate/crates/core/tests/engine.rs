//! The general engine against the counting oracle on dyadic polynomials
//! with a constant term, where no table applies.

mod common;

use common::*;
use quadzeta::exec::Exec;
use quadzeta::oracle::zeta_series_oracle;
use quadzeta::zeta::{zeta_engine, zeta_jordan, DispatchCase};

#[test]
fn dyadic_constants() {
    let f = field(2, 1);
    for base in pure_forms(&f, &[0, 1], 3) {
        for lam in [None, Some(1), Some(3)] {
            for c in [1, 2, 4, 12] {
                let j = base.with_lambda(lam).with_constant(p_power(&f, 0, c)).unwrap();
                let want = zeta_series_oracle(&j.to_quadpoly().unwrap(), 8, Exec::Parallel).unwrap();
                let z = zeta_engine(&j).unwrap();
                assert_eq!(z.zf.series_prefix(8).unwrap(), want, "{j}");
                assert_eq!(zeta_jordan(&j).unwrap().zf, z.zf, "{j}");
            }
        }
    }
}

#[test]
fn unramified_quartic_field() {
    let f = field(2, 2);
    for base in pure_forms(&f, &[0, 1], 2) {
        for c in [1, 2, 6] {
            let j = base.with_lambda(Some(2)).with_constant(p_power(&f, 0, c)).unwrap();
            let want = zeta_series_oracle(&j.to_quadpoly().unwrap(), 6, Exec::Parallel).unwrap();
            let z = zeta_engine(&j).unwrap();
            assert!(!matches!(z.case, DispatchCase::ZeroPolynomial));
            assert_eq!(z.zf.series_prefix(6).unwrap(), want, "{j}");
        }
    }
}
