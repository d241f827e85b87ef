//! Randomized checks over small inputs.

mod common;

use common::*;
use proptest::prelude::*;
use quadzeta::exec::Exec;
use quadzeta::oracle::{count_exhaustive, zeta_series_oracle};
use quadzeta::padic::RingElem;
use quadzeta::quadform::{classify_unimodular, reduce_standard, QuadPoly};
use quadzeta::ratfunc::RationalFunction;
use quadzeta::zeta::zeta;

fn prime() -> impl Strategy<Value = u64> {
    prop_oneof![Just(2u64), Just(3), Just(5)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn teichmuller_is_idempotent(p in prime(), f in 1usize..=2, idx in 0u128..4096) {
        let fd = field(p, f);
        let k = 3;
        let a = RingElem::from_index(&fd, k, idx % fd.q_pow(k).unwrap()).unwrap();
        let t = a.teichmuller();
        prop_assert_eq!(t.teichmuller(), t.clone());
        prop_assert_eq!(t.pow(fd.q() as u128), t.clone());
        prop_assert_eq!(t.reduce(1), a.reduce(1));
    }

    #[test]
    fn eta_is_multiplicative(p in prop_oneof![Just(3u64), Just(5), Just(7)], x in 1i64..200, y in 1i64..200) {
        let fd = field(p, 1);
        let a = RingElem::from_int(&fd, 2, x).unwrap();
        let b = RingElem::from_int(&fd, 2, y).unwrap();
        prop_assert_eq!((&a * &b).eta().unwrap(), a.eta().unwrap() * b.eta().unwrap());
    }

    #[test]
    fn poincare_round_trip(p in prime(), d in 0i64..3, e in 0i64..3) {
        let fd = field(p, 1);
        let f = QuadPoly::from_ints(&fd, &[vec![1, 0], vec![0, p.pow(d as u32) as i64]], &[0, p.pow(e as u32) as i64], 0).unwrap();
        let z = zeta(&f).unwrap().zf;
        let back = RationalFunction::zeta_from_poincare(&RationalFunction::poincare_from_zeta(&z)).unwrap();
        prop_assert_eq!(back, z);
    }

    #[test]
    fn reduction_keeps_counts(
        p in prime(),
        m in proptest::collection::vec(-6i64..6, 3),
        b in proptest::collection::vec(-6i64..6, 2),
        c in -6i64..6,
    ) {
        let fd = field(p, 1);
        let f = QuadPoly::from_ints(&fd, &[vec![m[0], m[1]], vec![m[1], m[2]]], &b, c).unwrap();
        let red = reduce_standard(&f).unwrap();
        let g = red.form.to_quadpoly().unwrap();
        for k in 1..=3 {
            let a = count_exhaustive(&f, k, Exec::Sequential).unwrap().to_modular().unwrap();
            let h = count_exhaustive(&g, k, Exec::Sequential).unwrap().to_modular().unwrap();
            prop_assert_eq!(a, h);
        }
    }

    #[test]
    fn closed_form_matches_counts(
        p in prime(),
        m in proptest::collection::vec(-9i64..9, 3),
        b in proptest::collection::vec(-9i64..9, 2),
        c in -9i64..9,
    ) {
        let fd = field(p, 1);
        let f = QuadPoly::from_ints(&fd, &[vec![m[0], m[1]], vec![m[1], m[2]]], &b, c).unwrap();
        let k = if p == 5 { 4 } else { 6 };
        let want = zeta_series_oracle(&f, k, Exec::Sequential).unwrap();
        prop_assert_eq!(zeta(&f).unwrap().zf.series_prefix(k as usize).unwrap(), want);
    }

    #[test]
    fn unimodular_class_is_invariant(p in prime(), u in 1i64..50, v in 1i64..50, s in -5i64..5) {
        // diag(u, v) against its image under x -> x + s y
        let fd = field(p, 1);
        prop_assume!(u % p as i64 != 0 && v % p as i64 != 0);
        let ints = |m: [[i64; 2]; 2]| -> Vec<Vec<quadzeta::padic::Exact>> {
            m.iter().map(|r| r.iter().map(|&e| quadzeta::padic::Exact::from_int(&fd, e)).collect()).collect()
        };
        let a = classify_unimodular(&fd, &ints([[u, 0], [0, v]])).unwrap();
        let b = classify_unimodular(&fd, &ints([[u, u * s], [u * s, u * s * s + v]])).unwrap();
        prop_assert_eq!(a, b);
    }
}
