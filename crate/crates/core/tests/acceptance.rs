//! Acceptance suite: one pass/fail line per criterion with its runtime.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use sbo_core::algebra::{MPoly, ParamScalar, Scalar};
use sbo_core::conformal::{bracket, build_generators, ConfField, GenLabel};
use sbo_core::covariance::{dimension_sweep, table_n4, verify_family};
use sbo_core::exterior::{basis, Form, Metric, PolyForm, Variant, VectorField};
use sbo_core::juhl::{gegenbauer_ode_residual, GegenbauerPoly};
use sbo_core::sbo::builders::star;
use sbo_core::sbo::{build_abcd, hodge_compose, hodge_signs, Abcd, Family, SboSpec};
use sbo_core::spaceform::{lemma61_restriction_check, BasicOp, StereoPair};
use sbo_core::SboError;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn run(k: u32, title: &str, budget_s: f64, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let out = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
        let msg = e
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "panic".into());
        Err(format!("panicked: {msg}"))
    });
    let secs = start.elapsed().as_secs_f64();
    let in_budget = secs < budget_s;
    let (tag, detail) = match &out {
        Ok(d) if in_budget => ("PASS", d.clone()),
        Ok(d) => ("FAIL", format!("{d}; over the {budget_s} s budget")),
        Err(e) => ("FAIL", e.clone()),
    };
    println!("criterion {k} [{tag}] {title}: {detail} ({secs:.2} s)");
    out.is_ok() && in_budget
}

fn rational_mu_samples() -> Vec<Scalar> {
    [
        (0, 1),
        (1, 1),
        (2, 1),
        (-1, 1),
        (-2, 1),
        (1, 2),
        (-1, 2),
        (-3, 2),
        (-5, 2),
        (-7, 2),
        (3, 2),
        (1, 3),
        (-2, 3),
        (7, 5),
        (-9, 4),
        (5, 7),
        (-11, 6),
        (13, 3),
        (9, 2),
        (-4, 1),
    ]
    .into_iter()
    .map(|(a, b)| Scalar::frac(a, b))
    .collect()
}

fn criterion_1() -> Outcome {
    let mut count = 0;
    for mu in rational_mu_samples() {
        let m = ParamScalar::constant(mu.clone());
        for ell in 0..=10 {
            ensure(gegenbauer_ode_residual(&m, ell).is_zero(), || {
                format!("ODE residual at mu={mu}, ell={ell}")
            })?;
            let g = GegenbauerPoly::new(&m, ell).coefficient_gcd();
            ensure(g == ParamScalar::from_int(1), || {
                format!("vanishing polynomial at mu={mu}, ell={ell}")
            })?;
            count += 1;
        }
    }
    for ell in 0..=10 {
        ensure(
            gegenbauer_ode_residual(&ParamScalar::u(), ell).is_zero(),
            || format!("symbolic ODE residual at ell={ell}"),
        )?;
        let g = GegenbauerPoly::new(&ParamScalar::u(), ell).coefficient_gcd();
        ensure(g == ParamScalar::from_int(1), || {
            format!("common root in mu at ell={ell}: {g}")
        })?;
    }
    Ok(format!(
        "{count} numeric and 11 symbolic (mu, ell) pairs, residual 0, coefficient gcd 1"
    ))
}

/// Every admissible family member with `p + q ∈ {3, 4}` and `ℓ ≤ 4`.
fn admissible_specs() -> Vec<SboSpec> {
    let mut out = Vec::new();
    for variant in [Variant::Minus, Variant::Plus] {
        for n in 3..=4usize {
            for p in 0..=n {
                for i in 0..=n {
                    for family in Family::ALL {
                        for ell in 0..=4usize {
                            let (ni, ii, l) = (n as i64, i as i64, ell as i64);
                            let weights = match family {
                                Family::Lower | Family::Same => vec![ParamScalar::u()],
                                Family::LowerTwo => vec![
                                    ParamScalar::from_int(ni - 2 * ii),
                                    ParamScalar::from_int(1 - ni - l),
                                ],
                                Family::Raise => {
                                    vec![ParamScalar::from_int(0), ParamScalar::from_int(1 - l)]
                                }
                            };
                            let mut seen: Vec<ParamScalar> = Vec::new();
                            for u in weights {
                                if seen.contains(&u) {
                                    continue;
                                }
                                seen.push(u.clone());
                                let spec = SboSpec::new(variant, p, n - p, i, family, u, ell);
                                if spec.check().is_ok() {
                                    out.push(spec);
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

fn criterion_2() -> Outcome {
    let specs = admissible_specs();
    let mut per_family = [0usize; 4];
    for spec in &specs {
        let report = verify_family(spec, false).map_err(|e| format!("{spec}: {e}"))?;
        ensure(report.pass, || {
            format!("{spec}: nonzero residual for {:?}", report.failures())
        })?;
        per_family[Family::ALL.iter().position(|f| *f == spec.family).unwrap()] += 1;
    }
    Ok(format!(
        "{} admissible specs covariant ({}: {}, {}: {}, {}: {}, {}: {})",
        specs.len(),
        Family::ALL[0],
        per_family[0],
        Family::ALL[1],
        per_family[1],
        Family::ALL[2],
        per_family[2],
        Family::ALL[3],
        per_family[3]
    ))
}

fn criterion_3() -> Outcome {
    let g = Metric::new(2, 2, Variant::Plus);
    let report = dimension_sweep(&g, 4).map_err(|e| e.to_string())?;
    let mut max_dim = 0;
    let mut failing_nec = 0;
    for r in &report.rows {
        ensure(r.dimension <= 2, || {
            format!(
                "dimension {} at ({},{}) u={} v={}",
                r.dimension, r.i, r.j, r.u, r.v
            )
        })?;
        if !r.necessary {
            failing_nec += 1;
            ensure(r.dimension == 0, || {
                format!(
                    "dimension {} where the necessary condition fails at ({},{}) u={} v={}",
                    r.dimension, r.i, r.j, r.u, r.v
                )
            })?;
        }
        max_dim = max_dim.max(r.dimension);
    }
    Ok(format!(
        "{} samples over 20 cells at L=4, max dimension {max_dim}, {failing_nec} samples outside the necessary condition all 0",
        report.rows.len()
    ))
}

fn criterion_4() -> Outcome {
    let mut dims = Vec::new();
    let mut boxes = 0;
    for (p, q) in [(4, 0), (3, 1), (2, 2), (1, 3)] {
        let report = table_n4(p, q, 3).map_err(|e| e.to_string())?;
        for r in &report.rows {
            ensure(r.pass, || {
                format!(
                    "R^({p},{q}) cell ({},{}) u={} v={}: dimension {}",
                    r.i, r.j, r.u, r.v, r.dimension
                )
            })?;
        }
        boxes = report.rows.iter().filter(|r| r.on_table).count();
        dims.push(((p, q), report.dimensions()));
    }
    let (first_sig, first) = &dims[0];
    for (sig, d) in &dims[1..] {
        ensure(d == first, || {
            format!("dimensions differ between R^{first_sig:?} and R^{sig:?}")
        })?;
    }
    Ok(format!(
        "{} samples per signature, {boxes} on nonempty boxes with dimension 2 and independent generators, identical across 4 signatures",
        first.len()
    ))
}

fn criterion_5() -> Outcome {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/golden/hodge_signs.json");
    let golden: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(path).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
    let mut checked = 0;
    for (p, q) in [(4, 0), (3, 1), (2, 2), (1, 3), (2, 1), (1, 2)] {
        let g = Metric::new(p, q, Variant::Plus);
        let n = p + q;
        let signs = hodge_signs(&g).map_err(|e| e.to_string())?;
        let key = format!("R^({p},{q})_plus");
        ensure(
            serde_json::to_value(&signs).unwrap() == golden[&key],
            || format!("signs for {key} differ from the golden file"),
        )?;
        let h = g.hyperplane();
        for s in &signs {
            let (x, y) = if s.relation.starts_with('D') {
                (Abcd::D, Abcd::A)
            } else {
                (Abcd::C, Abcd::B)
            };
            let lhs = build_abcd(x, &g, n - s.i)
                .and_then(|op| op.compose(&star(&g, s.i)?))
                .map_err(|e| e.to_string())?;
            let rhs = build_abcd(y, &g, s.i)
                .and_then(|op| hodge_compose(&h, &op))
                .map_err(|e| e.to_string())?;
            let diff = lhs
                .sub(&rhs.scale(&ParamScalar::from_int(s.sign)))
                .map_err(|e| e.to_string())?;
            ensure(diff.is_zero(), || {
                format!("{key}: {} fails at i={}", s.relation, s.i)
            })?;
            checked += 1;
        }
    }
    Ok(format!("{checked} identities exact with golden signs"))
}

fn criterion_6() -> Outcome {
    let mut pairs = 0;
    for variant in [Variant::Minus, Variant::Plus] {
        for n in 1..=4usize {
            for p in 0..=n {
                let pair = StereoPair::new(p, n - p, variant).map_err(|e| e.to_string())?;
                let tag = format!("R^({p},{})_{variant}", n - p);
                ensure(
                    pair.quadric_residual()
                        .map_err(|e| e.to_string())?
                        .is_zero(),
                    || format!("{tag}: off the quadric"),
                )?;
                ensure(
                    pair.phi_metric_residual()
                        .map_err(|e| e.to_string())?
                        .is_empty(),
                    || format!("{tag}: Phi residual"),
                )?;
                ensure(
                    pair.psi_metric_residual()
                        .map_err(|e| e.to_string())?
                        .is_empty(),
                    || format!("{tag}: Psi residual"),
                )?;
                pairs += 1;
            }
        }
    }
    let mut inversions = 0;
    for (p, q, variant) in [
        (2, 2, Variant::Minus),
        (1, 2, Variant::Plus),
        (0, 3, Variant::Minus),
    ] {
        let pair = StereoPair::new(p, q, variant).map_err(|e| e.to_string())?;
        let n = p + q;
        for deg in 0..=2usize {
            let idx = (0..deg).collect::<Vec<_>>();
            let coeff = &(&MPoly::var(n, 0) * &MPoly::var(n, n - 1)) + &MPoly::from_int(n, 2);
            let beta = Form::from_comps(n, deg, [(idx, coeff)]).to_rat();
            for v in -3i64..=3 {
                let v = Scalar::from_int(v);
                let up = pair.to_sphere(&v, &beta).map_err(|e| e.to_string())?;
                let back = pair.to_flat(&v, &up).map_err(|e| e.to_string())?;
                ensure(back == beta, || {
                    format!("R^({p},{q}): twisted pullbacks do not invert at v={v}")
                })?;
                inversions += 1;
            }
        }
    }
    Ok(format!(
        "{pairs} charts with zero Phi and Psi residuals, {inversions} inversions at |v| <= 3"
    ))
}

fn criterion_7() -> Outcome {
    let mut rows = 0;
    let mut full = 0;
    for (p, q) in [(2, 1), (1, 2), (0, 3), (3, 1), (2, 2), (1, 3), (0, 4)] {
        let n = p + q;
        for op in BasicOp::ROWS
            .into_iter()
            .chain(Family::ALL.map(BasicOp::FullSbo))
        {
            for i in 0..=n {
                for ell in 0..=4 {
                    match lemma61_restriction_check(op, p, q, i, ell) {
                        Ok(c) => {
                            ensure(c.pass, || {
                                format!(
                                    "{op} on R^({p},{q}) i={i} ell={ell}: expected {}, found {:?}",
                                    c.expected, c.found
                                )
                            })?;
                            if matches!(op, BasicOp::FullSbo(_)) {
                                full += 1;
                            } else {
                                rows += 1;
                            }
                        }
                        Err(
                            SboError::InadmissibleSpec(_)
                            | SboError::DegreeOverflow { .. }
                            | SboError::ShapeMismatch(_),
                        ) => {}
                        Err(e) => return Err(format!("{op} on R^({p},{q}) i={i} ell={ell}: {e}")),
                    }
                }
            }
        }
    }
    Ok(format!(
        "{rows} basic-row checks and {full} full-operator phase checks exact"
    ))
}

fn sample_forms(n: usize, deg: usize) -> Vec<PolyForm> {
    basis::combinations(n, deg)
        .into_iter()
        .enumerate()
        .map(|(r, idx)| {
            let a = MPoly::var(n, r % n);
            let b = MPoly::var(n, n - 1);
            let coeff = &(&a.pow(2) * &b)
                - &(&MPoly::var(n, (r + 1) % n).pow(3) + &MPoly::from_int(n, r as i64));
            Form::from_comps(n, deg, [(idx, coeff)])
        })
        .collect()
}

fn metrics(max_n: usize) -> Vec<Metric> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        for p in 0..=n {
            out.push(Metric::new(p, n - p, Variant::Minus));
            if p > 0 && p < n {
                out.push(Metric::new(p, n - p, Variant::Plus));
            }
        }
    }
    out
}

/// `L_Z` on a form from `L_Z(f dx_I) = Z(f) dx_I + f Σ dx_{i_1} ∧ … ∧ dZ^{i_k} ∧ …`.
fn lie_oracle(z: &VectorField, alpha: &PolyForm) -> PolyForm {
    let n = alpha.nvars();
    let mut out = Form::zero(n, alpha.degree());
    for (idx, f) in alpha.comps() {
        out = out.add(&Form::from_comps(n, idx.len(), [(idx.clone(), z.apply(f))]));
        for pos in 0..idx.len() {
            let mut acc = Form::function(f.clone());
            for (k, &var) in idx.iter().enumerate() {
                let factor = if k == pos {
                    Form::function(z.comps()[var].clone()).d().unwrap()
                } else {
                    PolyForm::basis_form(n, vec![var])
                };
                acc = acc.wedge(&factor);
            }
            out = out.add(&acc);
        }
    }
    out
}

fn criterion_8() -> Outcome {
    let mut groups = Vec::new();
    let mut group = |name: &str, f: &dyn Fn() -> Result<usize, String>| -> Result<(), String> {
        let start = Instant::now();
        let count = f().map_err(|e| format!("{name}: {e}"))?;
        groups.push(format!(
            "{name} {count} ok in {:.2} s",
            start.elapsed().as_secs_f64()
        ));
        Ok(())
    };
    group("d^2=0", &|| {
        let mut c = 0;
        for n in 2..=5 {
            for deg in 0..=n - 2 {
                for a in sample_forms(n, deg) {
                    ensure(a.d().unwrap().d().unwrap().is_zero(), || {
                        format!("n={n} deg={deg}")
                    })?;
                    c += 1;
                }
            }
        }
        Ok(c)
    })?;
    group("(d*)^2=0", &|| {
        let mut c = 0;
        for g in metrics(5) {
            for deg in 2..=g.n() {
                for a in sample_forms(g.n(), deg) {
                    let dd = g.codifferential(&g.codifferential(&a).unwrap()).unwrap();
                    ensure(dd.is_zero(), || format!("{g} deg={deg}"))?;
                    c += 1;
                }
            }
        }
        Ok(c)
    })?;
    group("star-star sign", &|| {
        let mut c = 0;
        for g in metrics(5) {
            let n = g.n();
            for deg in 0..=n {
                let sign = if (deg * (n - deg) + g.q()) % 2 == 0 {
                    1
                } else {
                    -1
                };
                for a in sample_forms(n, deg) {
                    let ss = g.star(&g.star(&a).unwrap()).unwrap();
                    ensure(ss == a.scale_scalar(&Scalar::from_int(sign)), || {
                        format!("{g} deg={deg}")
                    })?;
                    c += 1;
                }
            }
        }
        Ok(c)
    })?;
    group("Cartan/Leibniz", &|| {
        let mut c = 0;
        for n in 2..=4 {
            let g = Metric::new(n, 0, Variant::Plus);
            let gens = build_generators(&g, false).unwrap();
            for deg in 0..=n {
                for a in sample_forms(n, deg) {
                    for z in gens.fields() {
                        ensure(
                            z.field().lie_derivative(&a).unwrap() == lie_oracle(z.field(), &a),
                            || format!("L_{} on a {deg}-form in {n} variables", z.label()),
                        )?;
                        c += 1;
                    }
                    for deg_b in 0..=n - deg {
                        if deg + deg_b >= n {
                            continue;
                        }
                        for b in sample_forms(n, deg_b).into_iter().take(2) {
                            let lhs = a.wedge(&b).d().unwrap();
                            let sign = if deg % 2 == 0 { 1 } else { -1 };
                            let db = if deg_b < n {
                                b.d().unwrap()
                            } else {
                                Form::zero(n, deg_b + 1)
                            };
                            let da = if deg < n {
                                a.d().unwrap()
                            } else {
                                Form::zero(n, deg + 1)
                            };
                            let rhs = da
                                .wedge(&b)
                                .add(&a.wedge(&db).scale_scalar(&Scalar::from_int(sign)));
                            ensure(lhs == rhs, || {
                                format!("Leibniz for degrees {deg}, {deg_b} in {n} variables")
                            })?;
                            c += 1;
                        }
                    }
                }
            }
        }
        Ok(c)
    })?;
    group("Lie closure", &|| {
        let mut c = 0;
        for n in 3..=4 {
            for g in metrics(n).into_iter().filter(|g| g.n() == n) {
                for tangential in [false, true] {
                    let gens = build_generators(&g, tangential).unwrap();
                    for a in gens.fields() {
                        for b in gens.fields() {
                            let br = bracket(a, b).unwrap();
                            ensure(gens.coordinates(&br).is_some(), || {
                                format!("{g}: [{}, {}] leaves the span", a.label(), b.label())
                            })?;
                            c += 1;
                        }
                    }
                }
            }
        }
        Ok(c)
    })?;
    group("Pi homomorphism", &|| {
        let mut c = 0;
        let u = ParamScalar::u();
        for g in [
            Metric::new(2, 1, Variant::Minus),
            Metric::new(3, 1, Variant::Plus),
        ] {
            let gens = build_generators(&g, false).unwrap();
            let alpha = sample_forms(g.n(), 1)
                .into_iter()
                .fold(Form::zero(g.n(), 1), |acc, f| acc.add(&f));
            let fields = gens.fields();
            for (ka, za) in fields.iter().enumerate() {
                for zb in &fields[ka + 1..] {
                    let br = ConfField::new(bracket(za, zb).unwrap(), &g, GenLabel::Other).unwrap();
                    let lhs = br.multiplier_rep(&u, &alpha).unwrap();
                    let ab = za
                        .multiplier_rep(&u, &zb.multiplier_rep(&u, &alpha).unwrap())
                        .unwrap();
                    let ba = zb
                        .multiplier_rep(&u, &za.multiplier_rep(&u, &alpha).unwrap())
                        .unwrap();
                    ensure(lhs == ab.sub(&ba), || {
                        format!("{g}: [{}, {}]", za.label(), zb.label())
                    })?;
                    c += 1;
                }
            }
        }
        Ok(c)
    })?;
    Ok(groups.join("; "))
}

fn main() -> ExitCode {
    let results = [
        run(1, "Gegenbauer suite", 5.0, criterion_1),
        run(2, "flat covariance of all families", 600.0, criterion_2),
        run(3, "classification bounds at n=4", 1800.0, criterion_3),
        run(
            4,
            "n=4 table and signature independence",
            1800.0,
            criterion_4,
        ),
        run(5, "Hodge relations between A, B, C, D", 5.0, criterion_5),
        run(
            6,
            "stereographic charts and twisted pullbacks",
            30.0,
            criterion_6,
        ),
        run(7, "restriction table and phase law", 30.0, criterion_7),
        run(8, "structural property groups", 60.0, criterion_8),
    ];
    let passed = results.iter().filter(|&&ok| ok).count();
    println!("acceptance: {passed}/{} criteria passed", results.len());
    if passed == results.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
