mod common;

use common::*;
use num_traits::{One, Zero};
use proptest::prelude::*;
use sbo_core::algebra::parse::{parse_param, parse_poly_x};
use sbo_core::algebra::{MPoly, ParamScalar, RatFunc, Scalar};
use sbo_core::SboError;

fn poly(s: &str, n: usize) -> MPoly {
    parse_poly_x(s, n).unwrap()
}

#[test]
fn scalar_examples() {
    let a = &Scalar::frac(1, 2) + &Scalar::i();
    let b = &Scalar::frac(1, 2) - &Scalar::i();
    assert_eq!(&a * &b, Scalar::frac(5, 4));
    assert_eq!(&Scalar::i() * &Scalar::i(), Scalar::from_int(-1));
    assert_eq!(Scalar::frac(2, 4), Scalar::frac(1, 2));
    assert_eq!(Scalar::frac(2, 4).to_string(), "1/2");
    assert_eq!(Scalar::zero().inv().unwrap_err(), SboError::DivisionByZero);
    assert_eq!(
        Scalar::one().checked_div(&Scalar::zero()).unwrap_err(),
        SboError::DivisionByZero
    );
}

#[test]
fn diff_examples() {
    assert_eq!(poly("x1^2*x2", 2).diff(0).unwrap(), poly("2*x1*x2", 2));
    assert!(poly("x1^3", 2).diff(1).unwrap().is_zero());
    assert_eq!(poly("u*x1^2", 1).diff(0).unwrap(), poly("2*u*x1", 1));
    assert_eq!(
        poly("x1", 2).diff(2).unwrap_err(),
        SboError::IndexOutOfRange { index: 2, nvars: 2 }
    );
}

#[test]
fn param_eval_examples() {
    assert!(parse_param("u^2 + 1").unwrap().eval(&Scalar::i()).is_zero());
    assert_eq!(
        parse_param("2*u + 3").unwrap().eval(&Scalar::frac(1, 2)),
        Scalar::from_int(4)
    );
}

#[test]
fn ratfunc_examples() {
    let f = RatFunc::new(poly("1", 1), poly("x1^2 + 4", 1)).unwrap();
    assert_eq!(
        &f + &f,
        RatFunc::new(poly("2", 1), poly("x1^2 + 4", 1)).unwrap()
    );
    let g = RatFunc::new(poly("1", 1), poly("x1", 1)).unwrap();
    assert_eq!(
        g.diff(0).unwrap(),
        RatFunc::new(poly("-1", 1), poly("x1^2", 1)).unwrap()
    );
    let h = RatFunc::new(poly("x1^2 - 1", 1), poly("x1 - 1", 1))
        .unwrap()
        .reduced();
    assert_eq!(
        (h.num().clone(), h.den().clone()),
        (poly("x1 + 1", 1), poly("1", 1))
    );
}

#[test]
fn floats_are_rejected() {
    assert!(matches!(parse_poly_x("0.5*x1", 1), Err(SboError::Parse(_))));
    assert!(matches!("1e3".parse::<Scalar>(), Err(SboError::Parse(_))));
    assert_eq!("-3/2".parse::<Scalar>().unwrap(), Scalar::frac(-3, 2));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn scalar_field_axioms(a in scalar_strategy(), b in scalar_strategy(), c in scalar_strategy()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.inv().unwrap(), Scalar::one());
        }
    }

    #[test]
    fn poly_ring_axioms(
        a in poly_strategy(3, 3, 4),
        b in poly_strategy(3, 3, 4),
        c in poly_strategy(3, 3, 4),
    ) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn partials_commute(p in poly_strategy(3, 4, 5), j in 0usize..3, k in 0usize..3) {
        prop_assert_eq!(p.diff(j).unwrap().diff(k).unwrap(), p.diff(k).unwrap().diff(j).unwrap());
    }

    #[test]
    fn leibniz_rule(a in poly_strategy(2, 3, 3), b in poly_strategy(2, 3, 3), k in 0usize..2) {
        let lhs = (&a * &b).diff(k).unwrap();
        let rhs = &(&a.diff(k).unwrap() * &b) + &(&a * &b.diff(k).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn param_eval_is_a_homomorphism(
        p in prop::collection::vec(scalar_strategy(), 0..4),
        q in prop::collection::vec(scalar_strategy(), 0..4),
        u0 in scalar_strategy(),
    ) {
        let p = ParamScalar::from_coeffs(p);
        let q = ParamScalar::from_coeffs(q);
        prop_assert_eq!((&p * &q).eval(&u0), &p.eval(&u0) * &q.eval(&u0));
        prop_assert_eq!((&p + &q).eval(&u0), &p.eval(&u0) + &q.eval(&u0));
    }

    #[test]
    fn symbolic_identity_survives_specialization(
        a in poly_strategy(2, 2, 3),
        b in poly_strategy(2, 2, 3),
        u0 in rational_strategy(),
    ) {
        let prod = &a * &b;
        prop_assert_eq!(prod.specialize(&u0), &a.specialize(&u0) * &b.specialize(&u0));
    }

    #[test]
    fn render_parse_round_trip(p in poly_strategy(4, 3, 5)) {
        prop_assert_eq!(parse_poly_x(&p.to_string(), 4).unwrap(), p);
    }

    #[test]
    fn ratfunc_field_ops(
        a in plain_poly_strategy(2, 2, 3),
        b in plain_poly_strategy(2, 2, 3),
        c in plain_poly_strategy(2, 2, 3),
    ) {
        let den = &MPoly::one(2) + &(&c * &c);
        let f = RatFunc::new(a.clone(), den.clone()).unwrap();
        let g = RatFunc::new(b, MPoly::one(2) + MPoly::var(2, 0).pow(2)).unwrap();
        prop_assert_eq!(&(&f + &g) - &g, f.clone());
        prop_assert_eq!((&f * &g).diff(1).unwrap(), &(&f.diff(1).unwrap() * &g) + &(&f * &g.diff(1).unwrap()));
        if !a.is_zero() {
            prop_assert_eq!(&f * &f.inv().unwrap(), RatFunc::one(2));
        }
    }
}
