mod common;

use common::*;
use num_rational::BigRational;
use num_traits::One;
use quadzeta::padic::Exact;
use quadzeta::quadform::{JordanForm, UnimodularClass};
use quadzeta::ratfunc::{igr, q_pow, Poly, RationalFunction};
use quadzeta::zeta::{final_block, poles_odd, table_gary, table_violet, zeta_2unramified, zeta_odd};

fn rf(num: &[BigRational], den: &[BigRational]) -> RationalFunction {
    RationalFunction::new(Poly::from_coeffs(num.to_vec()), Poly::from_coeffs(den.to_vec())).unwrap()
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn z() -> BigRational {
    rat(0, 1)
}

fn one() -> BigRational {
    BigRational::one()
}

fn pure(c: UnimodularClass) -> JordanForm {
    JordanForm::single(c, 0)
}

#[test]
fn odd_examples() {
    let f = field(3, 1);
    let sq = pure(UnimodularClass::sq_int(&f, 1).unwrap());
    assert_eq!(zeta_odd(&sq).unwrap().zf, rf(&[rat(2, 3)], &[one(), z(), rat(-1, 3)]));
    assert_eq!(zeta_odd(&sq).unwrap().zf.to_string(), "(2/3) / (1 - (1/3)*t^2)");

    for p in [3, 5, 7] {
        let f = field(p, 1);
        let zero = JordanForm::new(&f, vec![], Some(0), Exact::zero(&f)).unwrap();
        assert_eq!(zeta_odd(&zero).unwrap().zf, igr(f.q()));
        let unit = JordanForm::new(&f, vec![], None, Exact::one(&f)).unwrap();
        assert_eq!(zeta_odd(&unit).unwrap().zf, RationalFunction::one());
    }
}

#[test]
fn dyadic_examples() {
    let f = field(2, 1);
    let sq = pure(UnimodularClass::sq_int(&f, 1).unwrap());
    assert_eq!(zeta_2unramified(&sq).unwrap().zf, rf(&[rat(1, 2)], &[one(), z(), rat(-1, 2)]));

    let lin = JordanForm::new(&f, vec![], Some(0), Exact::zero(&f)).unwrap();
    assert_eq!(zeta_2unramified(&lin).unwrap().zf, igr(2));

    let hyp = pure(UnimodularClass::hyp(&f));
    let num = Poly::from_coeffs(vec![z(), rat(1, 4), rat(1, 8)]);
    let den = &Poly::from_coeffs(vec![one(), rat(-1, 2)]) * &Poly::from_coeffs(vec![one(), z(), rat(-1, 4)]);
    assert_eq!(zeta_2unramified(&hyp).unwrap().zf, RationalFunction::new(num, den).unwrap());
}

#[test]
fn pole_examples() {
    for p in [3, 5] {
        let f = field(p, 1);
        let q = f.q();
        let sq = pure(UnimodularClass::sq_int(&f, 1).unwrap());
        assert_eq!(poles_odd(&sq).unwrap(), Poly::from_coeffs(vec![one(), z(), -q_pow(q, -1)]));
        let hyp = pure(UnimodularClass::hyp(&f));
        let lin = Poly::from_coeffs(vec![one(), -q_pow(q, -1)]);
        assert_eq!(poles_odd(&hyp).unwrap(), &lin * &lin);
        let zero = JordanForm::new(&f, vec![], None, Exact::zero(&f)).unwrap();
        assert_eq!(poles_odd(&zero).unwrap(), Poly::one());
    }
}

#[test]
fn violet_examples() {
    for fd in [1, 2] {
        let f = field(2, fd);
        let q = f.q();
        let igr_q = igr(q);
        let hyp = UnimodularClass::hyp(&f);
        let zero = UnimodularClass::zero(&f);
        let sq = UnimodularClass::sq_int(&f, 1).unwrap();
        // Sq has norm R; the zero class and Hyp do not
        let mass = one() - q_pow(q, -1);
        let planes = rf(&[z(), mass.clone(), &mass * &q_pow(q, -1)], &[one()]);
        assert_eq!(table_violet(&hyp, &zero, &zero).unwrap(), &planes * &igr_q);
        assert_eq!(table_violet(&sq, &sq, &zero).unwrap(), RationalFunction::constant(mass.clone()));
        assert!(table_violet(&zero, &hyp, &zero).unwrap().is_zero());
    }
}

#[test]
fn gary_examples() {
    let f = field(3, 1);
    let one_c = UnimodularClass::sq_int(&f, 1).unwrap().disc().unwrap();
    let three = Exact::from_int(&f, 3);
    assert_eq!(table_gary(&f, 1, &one_c, &three).unwrap(), RationalFunction::constant(rat(2, 3)));
    assert!(table_gary(&f, 0, &one_c, &three).unwrap().is_zero());
    let minus_one = UnimodularClass::hyp(&f).disc().unwrap();
    let want = &(&igr(3) + &RationalFunction::constant(rat(1, 3))) * &RationalFunction::constant(rat(2, 3));
    assert_eq!(table_gary(&f, 2, &minus_one, &Exact::one(&f)).unwrap(), want);
}

#[test]
fn final_block_both_odd() {
    for p in [3, 5] {
        let f = field(p, 1);
        let a = UnimodularClass::sq_int(&f, 1).unwrap();
        let b = UnimodularClass::sq_int(&f, 2).unwrap();
        assert_eq!(final_block(&a, &b).unwrap(), igr(f.q()));
    }
}
