mod common;

use common::*;
use proptest::prelude::*;
use sbo_core::algebra::{MPoly, ParamScalar};
use sbo_core::conformal::{
    bracket, build_generators, conformal_factor, lie_derivative_of_metric, ConfField, GenLabel,
};
use sbo_core::exterior::{Form, Metric, Variant, VectorField};
use sbo_core::SboError;

fn signatures(n: usize) -> Vec<Metric> {
    let mut out = Vec::new();
    for q in 0..=n {
        for v in [Variant::Plus, Variant::Minus] {
            out.push(Metric::new(n - q, q, v));
        }
    }
    out
}

#[test]
fn conformal_factor_examples() {
    let g = Metric::euclidean(3);
    let t = VectorField::coordinate(3, 0);
    assert!(conformal_factor(&t, &g).unwrap().is_zero());
    let e = VectorField::new((0..3).map(|k| x(3, k)).collect()).unwrap();
    assert_eq!(conformal_factor(&e, &g).unwrap(), c(3, 2));
    let g2 = Metric::euclidean(2);
    let shear = VectorField::new(vec![MPoly::zero(2), x(2, 0)]).unwrap();
    assert!(matches!(
        conformal_factor(&shear, &g2),
        Err(SboError::NotConformal(_))
    ));
    let lzg = lie_derivative_of_metric(&shear, &g2).unwrap();
    assert_eq!(lzg.get(&(0, 1)), Some(&c(2, 1)));
}

#[test]
fn generator_counts() {
    for n in 3..=5 {
        for g in signatures(n) {
            let full = build_generators(&g, false).unwrap();
            assert_eq!(full.len(), (n + 1) * (n + 2) / 2, "{g}");
            let tan = build_generators(&g, true).unwrap();
            assert_eq!(tan.len(), n * (n + 1) / 2, "{g}");
            assert!(tan.fields().iter().all(ConfField::is_tangential));
        }
    }
}

#[test]
fn bracket_examples() {
    let g = Metric::new(2, 1, Variant::Minus);
    let gens = build_generators(&g, false).unwrap();
    let find = |l: GenLabel| {
        gens.fields()
            .iter()
            .find(|f| f.label() == l)
            .unwrap()
            .clone()
    };
    assert!(bracket(
        &find(GenLabel::Translation(0)),
        &find(GenLabel::Translation(1))
    )
    .unwrap()
    .is_zero());
    let eb = bracket(&find(GenLabel::Dilation), &find(GenLabel::Translation(1))).unwrap();
    assert_eq!(
        eb,
        VectorField::coordinate(3, 1).scale(&sbo_core::algebra::Scalar::from_int(-1))
    );
}

#[test]
fn generators_close_under_bracket() {
    for n in 3..=4 {
        for g in signatures(n) {
            for tangential in [false, true] {
                let gens = build_generators(&g, tangential).unwrap();
                for a in gens.fields() {
                    for b in gens.fields() {
                        let br = bracket(a, b).unwrap();
                        assert!(
                            gens.coordinates(&br).is_some(),
                            "{g} [{}, {}]",
                            a.label(),
                            b.label()
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn multiplier_examples() {
    let g = Metric::euclidean(3);
    let gens = build_generators(&g, false).unwrap();
    let e = gens
        .fields()
        .iter()
        .find(|f| f.label() == GenLabel::Dilation)
        .unwrap();
    let one = Form::function(c(3, 1));
    let out = e.multiplier_rep(&ParamScalar::u(), &one).unwrap();
    assert_eq!(out, Form::function(MPoly::constant(3, ParamScalar::u())));
    let t = &gens.fields()[0];
    let a = Form::function(x(3, 0)).wedge(&Form::basis_form(3, vec![1]));
    assert_eq!(
        t.multiplier_rep(&ParamScalar::u(), &a).unwrap(),
        t.field().lie_derivative(&a).unwrap()
    );
}

#[test]
fn tangential_fields_restrict_conformally() {
    for n in 3..=5 {
        for g in signatures(n) {
            let h = g.hyperplane();
            for f in build_generators(&g, true).unwrap().fields() {
                let r = f.restrict(&h).unwrap();
                assert_eq!(r.rho(), &f.rho().restrict_last(), "{g} {}", f.label());
            }
            let non = build_generators(&g, false).unwrap();
            let bad = non.fields().iter().find(|f| !f.is_tangential()).unwrap();
            assert!(matches!(
                bad.restrict(&h),
                Err(SboError::NonTangentialGenerator(_))
            ));
        }
    }
}

fn metric_pair_form() -> impl Strategy<Value = (Metric, usize, usize, sbo_core::exterior::PolyForm)>
{
    (3usize..=4, 0usize..=4, any::<bool>()).prop_flat_map(|(n, q, plus)| {
        let q = q.min(n);
        let g = Metric::new(n - q, q, if plus { Variant::Plus } else { Variant::Minus });
        let m = (n + 1) * (n + 2) / 2;
        (Just(g), 0..m, 0..m, any_degree_form(n, 2))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn multiplier_rep_is_a_homomorphism((g, a, b, alpha) in metric_pair_form()) {
        let gens = build_generators(&g, false).unwrap();
        let (za, zb) = (&gens.fields()[a], &gens.fields()[b]);
        let u = ParamScalar::u();
        let br = ConfField::new(bracket(za, zb).unwrap(), &g, GenLabel::Other).unwrap();
        let lhs = br.multiplier_rep(&u, &alpha).unwrap();
        let ab = za.multiplier_rep(&u, &zb.multiplier_rep(&u, &alpha).unwrap()).unwrap();
        let ba = zb.multiplier_rep(&u, &za.multiplier_rep(&u, &alpha).unwrap()).unwrap();
        prop_assert_eq!(lhs, ab.sub(&ba));
    }
}
