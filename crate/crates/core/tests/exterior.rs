mod common;

use common::*;
use proptest::prelude::*;
use sbo_core::algebra::parse::parse_poly_x;
use sbo_core::algebra::{MPoly, RatFunc};
use sbo_core::exterior::json::{form_from_json, form_to_json};
use sbo_core::exterior::{basis, Form, Metric, PolyForm, RationalMap, Variant, VectorField};
use sbo_core::SboError;

fn poly(s: &str, n: usize) -> MPoly {
    parse_poly_x(s, n).unwrap()
}

fn dx(n: usize, idx: &[usize]) -> PolyForm {
    Form::basis_form(n, idx.to_vec())
}

fn all_metrics(max_n: usize) -> Vec<Metric> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        for q in 0..=n {
            for v in [Variant::Plus, Variant::Minus] {
                out.push(Metric::new(n - q, q, v));
            }
        }
    }
    out
}

// Sign of the permutation taking `seq` to sorted order, by counting
// inversions directly.
fn perm_sign(seq: &[usize]) -> i64 {
    let mut inv = 0;
    for a in 0..seq.len() {
        for b in a + 1..seq.len() {
            if seq[a] > seq[b] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

// Leibniz determinant of a small integer matrix.
fn det(m: &[Vec<i64>]) -> i64 {
    fn perms(k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in perms(k - 1) {
            for pos in 0..=p.len() {
                let mut q = p.clone();
                q.insert(pos, k - 1);
                out.push(q);
            }
        }
        out
    }
    let k = m.len();
    perms(k)
        .into_iter()
        .map(|p| perm_sign(&p) * (0..k).map(|r| m[r][p[r]]).product::<i64>())
        .sum()
}

/// Hodge star of `dx_I` from its defining property: the coefficient of
/// `dx_K` in `*dx_I` is fixed by `dx_J ∧ *dx_I = det(g(dx_{J_a}, dx_{I_b})) vol`
/// with `K = J^c`.
fn star_oracle(g: &Metric, idx: &[usize]) -> PolyForm {
    let n = g.n();
    let mut out = PolyForm::zero(n, n - idx.len());
    for j in basis::combinations(n, idx.len()) {
        let gram: Vec<Vec<i64>> = j
            .iter()
            .map(|&a| {
                idx.iter()
                    .map(|&b| if a == b { g.sign(a) } else { 0 })
                    .collect()
            })
            .collect();
        let pairing = det(&gram);
        if pairing == 0 {
            continue;
        }
        let k = basis::complement(&j, n);
        let concat: Vec<usize> = j.iter().chain(&k).copied().collect();
        let coeff = pairing * perm_sign(&concat);
        out.add_component(k, c(n, coeff));
    }
    out
}

#[test]
fn d_examples() {
    let n = 2;
    let a = Form::function(x(n, 1)).wedge(&dx(n, &[0]));
    assert_eq!(a.d().unwrap(), dx(n, &[0, 1]).neg());
    let exact = Form::function(x(n, 0))
        .wedge(&dx(n, &[1]))
        .add(&Form::function(x(n, 1)).wedge(&dx(n, &[0])));
    assert!(exact.d().unwrap().is_zero());
    assert_eq!(
        dx(n, &[0, 1]).d().unwrap_err(),
        SboError::DegreeOverflow { degree: 2 }
    );
}

#[test]
fn hodge_examples() {
    let g = Metric::new(1, 1, Variant::Minus);
    assert_eq!(g.sign(0), 1);
    assert_eq!(g.sign(1), -1);
    assert_eq!(g.star(&Form::function(c(2, 1))).unwrap(), dx(2, &[0, 1]));
    let once = g.star(&dx(2, &[0])).unwrap();
    assert_eq!(g.star(&once).unwrap(), dx(2, &[0]));
    let wrong = Metric::euclidean(3);
    assert_eq!(
        wrong.star(&dx(2, &[0])).unwrap_err(),
        SboError::MetricDimensionMismatch { metric: 3, form: 2 }
    );
}

#[test]
fn metric_variants_order_signs() {
    let plus = Metric::new(2, 2, Variant::Plus);
    assert_eq!(plus.signs(), &[-1, -1, 1, 1]);
    let minus = Metric::new(2, 2, Variant::Minus);
    assert_eq!(minus.signs(), &[1, 1, -1, -1]);
    assert_eq!(plus.hyperplane(), Metric::new(1, 2, Variant::Plus));
    assert_eq!(minus.hyperplane(), Metric::new(2, 1, Variant::Minus));
}

#[test]
fn hodge_star_matches_gram_oracle() {
    for g in all_metrics(5) {
        for i in 0..=g.n() {
            for idx in basis::combinations(g.n(), i) {
                let got = g.star(&dx(g.n(), &idx)).unwrap();
                assert_eq!(got, star_oracle(&g, &idx), "{g}, dx{idx:?}");
            }
        }
    }
}

#[test]
fn star_star_sign_law() {
    for g in all_metrics(5) {
        let n = g.n();
        for i in 0..=n {
            let expected = if (i * (n - i) + g.q()) % 2 == 0 {
                1
            } else {
                -1
            };
            for idx in basis::combinations(n, i) {
                let a = dx(n, &idx);
                let ss = g.star(&g.star(&a).unwrap()).unwrap();
                let want = if expected > 0 { a.clone() } else { a.neg() };
                assert_eq!(ss, want, "{g} dx{idx:?}");
                assert_eq!(g.star_inv(&g.star(&a).unwrap()).unwrap(), a);
            }
        }
    }
}

#[test]
fn codifferential_examples() {
    let g = Metric::euclidean(2);
    assert!(g
        .codifferential(&Form::function(x(2, 0)))
        .unwrap()
        .is_zero());
    let a = Form::function(x(2, 0)).wedge(&dx(2, &[0]));
    assert_eq!(g.codifferential(&a).unwrap(), Form::function(c(2, -1)));
}

/// `d* = −Σ_k ε_k ι_k ∂_k` in flat coordinates.
fn codifferential_oracle(g: &Metric, a: &PolyForm) -> PolyForm {
    let n = g.n();
    let mut out = PolyForm::zero(n, a.degree().saturating_sub(1));
    for k in 0..n {
        let t = a.partial(k).interior(k);
        out = if g.sign(k) > 0 {
            out.sub(&t)
        } else {
            out.add(&t)
        };
    }
    out
}

#[test]
fn interior_examples() {
    let n = 3;
    assert_eq!(dx(n, &[2]).interior(2), Form::function(c(n, 1)));
    assert_eq!(dx(n, &[0, 2]).interior(2), dx(n, &[0]).neg());
}

#[test]
fn restriction_examples() {
    let n = 3;
    let a = Form::function(x(n, 2)).wedge(&dx(n, &[0]));
    assert!(a.restrict().unwrap().is_zero());
    assert!(dx(n, &[0, 2]).restrict().unwrap().is_zero());
    let b = Form::function(x(n, 0)).wedge(&dx(n, &[1]));
    assert_eq!(
        b.restrict().unwrap(),
        Form::function(x(2, 0)).wedge(&dx(2, &[1]))
    );
}

#[test]
fn lie_derivative_examples() {
    let n = 2;
    let t1 = VectorField::coordinate(n, 0);
    let a = Form::function(x(n, 0)).wedge(&dx(n, &[1]));
    assert_eq!(t1.lie_derivative(&a).unwrap(), dx(n, &[1]));
    let euler = VectorField::new(vec![x(n, 0), x(n, 1)]).unwrap();
    assert_eq!(euler.lie_derivative(&dx(n, &[0])).unwrap(), dx(n, &[0]));
    assert!(matches!(
        euler.lie_derivative(&dx(3, &[0])),
        Err(SboError::DimensionMismatch { .. })
    ));
}

#[test]
fn pullback_examples() {
    let n = 2;
    let a = Form::function(x(n, 0)).wedge(&dx(n, &[1])).to_rat();
    assert_eq!(RationalMap::identity(n).pullback(&a).unwrap(), a);
    let f = RationalMap::from_polys(2, vec![poly("x1*x2", 2), poly("x1 + x2^2", 2)]).unwrap();
    let dz1 = Form::<RatFunc>::basis_form(2, vec![0]);
    let want = Form::function(x(n, 1))
        .wedge(&dx(n, &[0]))
        .add(&Form::function(x(n, 0)).wedge(&dx(n, &[1])))
        .to_rat();
    assert_eq!(f.pullback(&dz1).unwrap(), want);
}

#[test]
fn json_round_trip() {
    let a = Form::function(poly("u*x1^2 - 1/2*x3", 3)).wedge(&dx(3, &[0, 2]));
    let v = form_to_json(&a);
    assert_eq!(v["comps"]["1,3"], "(u)*x1^2 - 1/2*x3".replace("(u)*", "u*"));
    assert_eq!(form_from_json(&v).unwrap(), a);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn d_squared_vanishes(a in (1usize..=5).prop_flat_map(|n| any_degree_form(n, 3))) {
        if a.degree() + 2 <= a.nvars() {
            prop_assert!(a.d().unwrap().d().unwrap().is_zero());
        }
    }

    #[test]
    fn codifferential_squared_vanishes(
        (g, a) in (0usize..all_metrics(5).len())
            .prop_flat_map(|m| { let g = all_metrics(5)[m].clone(); let n = g.n(); (Just(g), any_degree_form(n, 3)) })
    ) {
        let once = g.codifferential(&a).unwrap();
        prop_assert_eq!(&once, &codifferential_oracle(&g, &a));
        prop_assert!(g.codifferential(&once).unwrap().is_zero());
    }

    #[test]
    fn pairing_is_symmetric(
        (g, a, b) in (0usize..all_metrics(4).len()).prop_flat_map(|m| {
            let g = all_metrics(4)[m].clone();
            let n = g.n();
            (0..=n).prop_flat_map(move |i| (Just(g.clone()), form_strategy(n, i, 2), form_strategy(n, i, 2)))
        })
    ) {
        let ab = a.wedge(&g.star(&b).unwrap());
        let ba = b.wedge(&g.star(&a).unwrap());
        prop_assert_eq!(&ab, &ba);
        let vol = Form::function(g.inner(&a, &b).unwrap()).wedge(&Form::basis_form(g.n(), (0..g.n()).collect()));
        prop_assert_eq!(ab, vol);
    }

    #[test]
    fn interior_twice_vanishes(a in any_degree_form(4, 2), k in 0usize..4) {
        prop_assert!(a.interior(k).interior(k).is_zero());
    }

    #[test]
    fn lie_derivative_is_a_derivation(
        z in prop::collection::vec(poly_strategy(3, 2, 2), 3),
        a in any_degree_form(3, 2),
        b in any_degree_form(3, 2),
        f in poly_strategy(3, 2, 2),
    ) {
        let z = VectorField::new(z).unwrap();
        let fa = a.mul_fn(&f);
        let lhs = z.lie_derivative(&fa).unwrap();
        let rhs = a.mul_fn(&z.apply(&f)).add(&z.lie_derivative(&a).unwrap().mul_fn(&f));
        prop_assert_eq!(lhs, rhs);
        let ab = a.wedge(&b);
        let lhs = z.lie_derivative(&ab).unwrap();
        let rhs = z.lie_derivative(&a).unwrap().wedge(&b).add(&a.wedge(&z.lie_derivative(&b).unwrap()));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn pullback_commutes_with_d(f in ratmap_strategy(2, 3), a in form_strategy(3, 1, 2)) {
        let a = a.to_rat();
        let lhs = f.pullback(&a.d().unwrap()).unwrap();
        let rhs = f.pullback(&a).unwrap().d().unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn pullback_is_functorial(
        f in small_ratmap_strategy(2, 2),
        g in small_ratmap_strategy(2, 2),
        a in any_degree_form(2, 1),
    ) {
        let a = a.to_rat();
        let gf = g.compose(&f).unwrap();
        prop_assert_eq!(gf.pullback(&a).unwrap(), f.pullback(&g.pullback(&a).unwrap()).unwrap());
    }

    #[test]
    fn json_round_trips(a in (1usize..=4).prop_flat_map(|n| any_degree_form(n, 3))) {
        prop_assert_eq!(form_from_json(&form_to_json(&a)).unwrap(), a);
    }
}
