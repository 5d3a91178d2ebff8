//! Shared generators for property tests.
#![allow(dead_code)]

use proptest::prelude::*;
use sbo_core::algebra::{MPoly, Monomial, ParamScalar, RatFunc, Scalar};
use sbo_core::exterior::{basis, Form, PolyForm, RationalMap};

pub fn scalar_strategy() -> impl Strategy<Value = Scalar> {
    (-6i64..=6, 1i64..=4, -3i64..=3)
        .prop_map(|(a, b, c)| &Scalar::frac(a, b) + &(&Scalar::i() * &Scalar::from_int(c)))
}

pub fn rational_strategy() -> impl Strategy<Value = Scalar> {
    (-9i64..=9, 1i64..=5).prop_map(|(a, b)| Scalar::frac(a, b))
}

/// `a + b u` with small integer `a, b`.
pub fn param_strategy() -> impl Strategy<Value = ParamScalar> {
    (-4i64..=4, -2i64..=2)
        .prop_map(|(a, b)| ParamScalar::from_coeffs(vec![Scalar::from_int(a), Scalar::from_int(b)]))
}

pub fn poly_strategy(n: usize, max_deg: u32, max_terms: usize) -> impl Strategy<Value = MPoly> {
    prop::collection::vec(
        (prop::collection::vec(0..=max_deg, n), param_strategy()),
        0..=max_terms,
    )
    .prop_map(move |terms| {
        MPoly::from_terms(
            n,
            terms
                .into_iter()
                .map(|(e, c)| (Monomial::from_exponents(&e), c)),
        )
    })
}

/// A `u`-free polynomial with integer coefficients.
pub fn plain_poly_strategy(
    n: usize,
    max_deg: u32,
    max_terms: usize,
) -> impl Strategy<Value = MPoly> {
    prop::collection::vec(
        (prop::collection::vec(0..=max_deg, n), -4i64..=4),
        0..=max_terms,
    )
    .prop_map(move |terms| {
        MPoly::from_terms(
            n,
            terms
                .into_iter()
                .map(|(e, c)| (Monomial::from_exponents(&e), ParamScalar::from_int(c))),
        )
    })
}

pub fn form_strategy(n: usize, degree: usize, max_deg: u32) -> impl Strategy<Value = PolyForm> {
    let basis = basis::combinations(n, degree);
    let nb = basis.len();
    prop::collection::vec((0..nb, poly_strategy(n, max_deg, 3)), 0..=3).prop_map(move |comps| {
        Form::from_comps(
            n,
            degree,
            comps.into_iter().map(|(r, c)| (basis[r].clone(), c)),
        )
    })
}

/// A form with `u`-free integer coefficients.
pub fn plain_form_strategy(
    n: usize,
    degree: usize,
    max_deg: u32,
) -> impl Strategy<Value = PolyForm> {
    let basis = basis::combinations(n, degree);
    let nb = basis.len();
    prop::collection::vec((0..nb, plain_poly_strategy(n, max_deg, 3)), 0..=3).prop_map(
        move |comps| {
            Form::from_comps(
                n,
                degree,
                comps.into_iter().map(|(r, c)| (basis[r].clone(), c)),
            )
        },
    )
}

pub fn any_degree_form(n: usize, max_deg: u32) -> impl Strategy<Value = PolyForm> {
    (0..=n).prop_flat_map(move |i| form_strategy(n, i, max_deg))
}

/// A small rational map `R^n -> R^m` whose components are `p_k / (1 + s_k^2)`
/// with polynomial `p_k` and linear `s_k`, so denominators never vanish
/// identically.
pub fn ratmap_strategy(n: usize, m: usize) -> impl Strategy<Value = RationalMap> {
    prop::collection::vec(
        (plain_poly_strategy(n, 2, 3), plain_poly_strategy(n, 1, 2)),
        m,
    )
    .prop_map(move |cs| {
        let comps = cs
            .into_iter()
            .map(|(p, s)| {
                let den = &MPoly::one(n) + &(&s * &s);
                RatFunc::new(p, den).unwrap()
            })
            .collect();
        RationalMap::new(n, comps).unwrap()
    })
}

/// Maps with affine numerators over `1` or `1 + x_k^2`; small enough that
/// double compositions stay cheap.
pub fn small_ratmap_strategy(n: usize, m: usize) -> impl Strategy<Value = RationalMap> {
    prop::collection::vec((plain_poly_strategy(n, 1, 2), 0..=n), m).prop_map(move |cs| {
        let comps = cs
            .into_iter()
            .map(|(p, k)| {
                let den = if k == n {
                    MPoly::one(n)
                } else {
                    &MPoly::one(n) + &MPoly::var(n, k).pow(2)
                };
                RatFunc::new(p, den).unwrap()
            })
            .collect();
        RationalMap::new(n, comps).unwrap()
    })
}

pub fn x(n: usize, k: usize) -> MPoly {
    MPoly::var(n, k)
}

pub fn c(n: usize, v: i64) -> MPoly {
    MPoly::from_int(n, v)
}

/// A random operator from `i`-forms to `j`-forms with polynomial
/// coefficients of degree `≤ coeff_deg` and derivatives of order `≤ order`.
pub fn op_strategy(
    n: usize,
    i: usize,
    j: usize,
    restricted: bool,
    order: u32,
    coeff_deg: u32,
) -> impl Strategy<Value = sbo_core::sbo::FormOperator> {
    let dst_n = if restricted { n - 1 } else { n };
    let rows = basis::binomial(dst_n, j);
    let cols = basis::binomial(n, i);
    prop::collection::vec(
        (
            prop::collection::vec(0..=order, n),
            0..rows,
            0..cols,
            poly_strategy(dst_n, coeff_deg, 2),
        ),
        0..=4,
    )
    .prop_map(move |entries| {
        let mut op = sbo_core::sbo::FormOperator::zero(n, i, j, restricted);
        for (alpha, r, c, p) in entries {
            let total: u32 = alpha.iter().sum();
            if total <= order {
                op.add_entry(Monomial::from_exponents(&alpha), r, c, p);
            }
        }
        op
    })
}

/// Compares `value` with the golden file `tests/golden/<name>`; with
/// `SBO_UPDATE_GOLDEN=1` the file is (re)written instead.
pub fn check_golden(name: &str, value: &serde_json::Value) {
    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name);
    let text = serde_json::to_string_pretty(value).unwrap() + "\n";
    if std::env::var("SBO_UPDATE_GOLDEN").is_ok_and(|v| v == "1") {
        std::fs::write(&path, &text).unwrap();
        return;
    }
    let expected = std::fs::read_to_string(&path)
        .unwrap_or_else(|e| panic!("missing golden file {}: {e}", path.display()));
    assert_eq!(text, expected, "golden mismatch for {name}");
}
