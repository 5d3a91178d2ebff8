//! Subcommand implementations.

use std::fs;
use std::path::Path;

use anyhow::{anyhow, bail, Context};
use serde_json::{json, Value};

use sbo_core::algebra::parse::parse_param;
use sbo_core::algebra::{MPoly, ParamScalar, RatFunc, Scalar};
use sbo_core::conformal::build_generators;
use sbo_core::covariance::{
    classify, necessary_condition, table_n4, verify_basis, verify_family, verify_operator,
    ClassifySpec, CovarianceReport, SweepReport, DEFAULT_MAX_ORDER,
};
use sbo_core::exterior::json::{form_from_json, form_to_json};
use sbo_core::exterior::{Form, Metric, RatForm, Variant};
use sbo_core::juhl::{gegenbauer_ode_residual, render_univariate, GegenbauerPoly};
use sbo_core::sbo::json::{op_from_json, op_to_json};
use sbo_core::sbo::{build_sbo, hodge_compose, Family, SboSpec};
use sbo_core::spaceform::{lemma61_restriction_check, BasicOp, StereoPair};

use crate::args::{Cli, Command, FamilyArgs, Format, SpaceArgs, SpaceformCheck, TableFormat};
use crate::Failure;

type Outcome = std::result::Result<(), Failure>;

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn math(msg: impl Into<String>) -> Failure {
    Failure::Math(msg.into())
}

fn read_json(path: &Path) -> anyhow::Result<Value> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn variant(s: &str) -> anyhow::Result<Variant> {
    Ok(s.parse::<Variant>()?)
}

fn rational(s: &str) -> anyhow::Result<Scalar> {
    s.parse::<Scalar>()
        .with_context(|| format!("expected an exact rational, got {s:?}"))
}

/// `symbolic` or a polynomial in `u` with exact coefficients.
fn weight(s: &str) -> anyhow::Result<ParamScalar> {
    if s == "symbolic" {
        return Ok(ParamScalar::u());
    }
    parse_param(s).with_context(|| format!("expected an exact rational or `symbolic`, got {s:?}"))
}

fn pair(s: &str) -> anyhow::Result<(usize, usize)> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| anyhow!("expected `a,b`, got {s:?}"))?;
    Ok((a.trim().parse()?, b.trim().parse()?))
}

fn max_order() -> anyhow::Result<u32> {
    match std::env::var("SBO_MAX_ORDER") {
        Ok(s) => s
            .trim()
            .parse()
            .with_context(|| format!("SBO_MAX_ORDER must be a nonnegative integer, got {s:?}")),
        Err(_) => Ok(DEFAULT_MAX_ORDER),
    }
}

pub fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Gegenbauer { mu, ell } => gegenbauer(&mu, ell),
        Command::Build { family, hodge } => build(&family, hodge),
        Command::Apply { operator, form } => apply(&operator, &form),
        Command::Verify {
            space,
            i,
            j,
            u,
            ell,
            v,
            from_file,
            format,
        } => {
            let report = match from_file {
                Some(path) => verify_file(&space, &path, &u, ell, v.as_deref())?,
                None => {
                    let (i, j) = match (i, j) {
                        (Some(i), Some(j)) => (i, j),
                        _ => {
                            return Err(Failure::Usage(anyhow!(
                                "verify needs -i and -j (or --from-file)"
                            )))
                        }
                    };
                    let fam = FamilyArgs {
                        space,
                        i,
                        j,
                        u,
                        ell,
                        v,
                    };
                    verify_family(&family_spec(&fam)?, false)?
                }
            };
            print_report(&report, format);
            if report.pass {
                Ok(())
            } else {
                let failing: Vec<String> =
                    report.failures().iter().map(|l| l.to_string()).collect();
                Err(math(format!(
                    "nonzero residual for generators {}",
                    failing.join(", ")
                )))
            }
        }
        Command::Classify {
            space,
            cell,
            u,
            v,
            order_bound,
            format,
        } => classify_cmd(&space, &cell, &u, &v, order_bound, format),
        Command::TableN4 {
            signature,
            order_bound,
            format,
        } => table(&signature, order_bound, format),
        Command::Spaceform { check } => spaceform(check),
        Command::DumpGenerators { space, tangential } => {
            let g = Metric::new(space.p, space.q, variant(&space.variant)?);
            print_json(&build_generators(&g, tangential)?.to_json());
            Ok(())
        }
    }
}

fn gegenbauer(mu: &str, ell: usize) -> Outcome {
    let mu = ParamScalar::constant(rational(mu)?);
    let poly = GegenbauerPoly::new(&mu, ell);
    let dense = poly
        .dense()
        .ok_or_else(|| anyhow!("numeric μ gives numeric coefficients"))?;
    println!("{}", render_univariate(&dense, "t"));
    let residual = gegenbauer_ode_residual(&mu, ell);
    println!("residual: {residual}");
    if residual.is_zero() {
        Ok(())
    } else {
        Err(math("the Gegenbauer equation does not hold"))
    }
}

/// Resolves the family, weight and order of a family request, checking
/// ℓ = (v + j) − (u + i) when both ℓ and v are given.
fn family_spec(a: &FamilyArgs) -> anyhow::Result<SboSpec> {
    let var = variant(&a.space.variant)?;
    let shift = a.j as i64 - a.i as i64;
    let family = Family::from_shift(shift)
        .ok_or_else(|| anyhow!("no family maps {}-forms to {}-forms", a.i, a.j))?;
    let u = weight(&a.u)?;
    let derived = match &a.v {
        Some(v) => {
            let gap = &(&weight(v)? + &ParamScalar::from_int(shift)) - &u;
            let l = gap
                .as_constant()
                .and_then(|s| s.to_i64())
                .filter(|l| *l >= 0)
                .ok_or_else(|| anyhow!("(v + j) − (u + i) = {gap} is not a natural number"))?;
            Some(l as usize)
        }
        None => None,
    };
    let ell = match (a.ell, derived) {
        (Some(l), Some(d)) if l != d => bail!("--ell {l} contradicts ℓ = (v + j) − (u + i) = {d}"),
        (Some(l), _) | (None, Some(l)) => l,
        (None, None) => bail!("give --ell or --v"),
    };
    let spec = SboSpec::new(var, a.space.p, a.space.q, a.i, family, u, ell);
    spec.check()?;
    Ok(spec)
}

fn build(a: &FamilyArgs, hodge: bool) -> Outcome {
    let spec = family_spec(a)?;
    let mut op = build_sbo(&spec)?;
    if hodge {
        op = hodge_compose(&spec.metric().hyperplane(), &op)?;
    }
    print_json(&json!({
        "spec": spec.to_string(),
        "v": spec.v().to_string(),
        "hodge": hodge,
        "operator": op_to_json(&op),
    }));
    Ok(())
}

fn apply(op_path: &Path, form_path: &Path) -> Outcome {
    let op = load_operator(op_path)?;
    let alpha = form_from_json(&read_json(form_path)?)?;
    print_json(&form_to_json(&op.apply(&alpha)?));
    Ok(())
}

fn verify_file(
    space: &SpaceArgs,
    path: &Path,
    u: &str,
    ell: Option<usize>,
    v: Option<&str>,
) -> anyhow::Result<CovarianceReport> {
    let g = Metric::new(space.p, space.q, variant(&space.variant)?);
    let op = load_operator(path)?;
    let u = weight(u)?;
    let shift = op.dst_degree() as i64 - op.src_degree() as i64;
    let from_ell = |l: usize| &u + &ParamScalar::from_int(l as i64 - shift);
    let v = match (v, ell) {
        (Some(v), Some(l)) => {
            let v = weight(v)?;
            if v != from_ell(l) {
                bail!("--ell {l} contradicts ℓ = (v + j) − (u + i) for v = {v}");
            }
            v
        }
        (Some(v), None) => weight(v)?,
        (None, Some(l)) => from_ell(l),
        (None, None) => from_ell(op.order().unwrap_or(0) as usize),
    };
    let mut report = verify_operator(&op, &g, &u, &v)?;
    report.subject = format!("{} ({})", path.display(), report.subject);
    Ok(report)
}

fn print_report(r: &CovarianceReport, format: Format) {
    match format {
        Format::Json => print_json(&r.to_json()),
        Format::Pretty => {
            println!("{}", r.subject);
            println!("u = {}, v = {}", r.u, r.v);
            for (label, res) in &r.residuals {
                println!(
                    "  {label:<6} {}",
                    if res.is_zero() { "0" } else { "NONZERO" }
                );
            }
            println!("verdict: {}", if r.pass { "pass" } else { "fail" });
        }
    }
}

fn classify_cmd(
    space: &SpaceArgs,
    cell: &str,
    u: &str,
    v: &str,
    order_bound: u32,
    format: Format,
) -> Outcome {
    let (i, j) = pair(cell)?;
    let (u, v) = (rational(u)?, rational(v)?);
    let mut spec = ClassifySpec::new(
        variant(&space.variant)?,
        space.p,
        space.q,
        i,
        j,
        u.clone(),
        v.clone(),
        order_bound,
    );
    spec.max_order = max_order()?;
    let result = classify(&spec)?;
    let verified = verify_basis(&result)?;
    let nec = necessary_condition(i, j, &u, &v, spec.n());
    let dim = result.dimension();
    match format {
        Format::Json => {
            let mut out = result.to_json();
            out["necessary_condition"] = json!(nec);
            out["basis_verified"] = json!(verified);
            print_json(&out);
        }
        Format::Pretty => {
            println!(
                "cell ({i},{j}) on R^({},{})_{}, u = {u}, v = {v}, ℓ = {}",
                space.p,
                space.q,
                spec.variant,
                spec.ell()
            );
            println!("dimension: {dim}");
            println!("necessary condition: {nec}");
            println!("basis verified: {verified}");
        }
    }
    if !verified {
        return Err(math("a kernel element failed the covariance check"));
    }
    if dim > 2 {
        return Err(math(format!("dimension {dim} exceeds 2")));
    }
    if !nec && dim > 0 {
        return Err(math(format!(
            "dimension {dim} where the necessary condition fails"
        )));
    }
    Ok(())
}

fn matrix(report: &SweepReport) -> String {
    let n = report.p + report.q;
    let mut s = String::from("i\\j");
    for j in 0..n {
        s.push_str(&format!(",{j}"));
    }
    s.push('\n');
    for i in 0..=n {
        s.push_str(&i.to_string());
        for j in 0..n {
            let rows: Vec<_> = report
                .rows
                .iter()
                .filter(|r| r.i == i && r.j == j)
                .collect();
            let on: Vec<_> = rows.iter().filter(|r| r.on_table).collect();
            let entry = if on.is_empty() {
                "-".to_string()
            } else {
                let gens = on
                    .iter()
                    .find(|r| !r.generators.is_empty() && !r.renormalization_point)
                    .map(|r| r.generators.join(" & "))
                    .unwrap_or_default();
                let dims: std::collections::BTreeSet<usize> =
                    on.iter().map(|r| r.dimension).collect();
                let dims: Vec<String> = dims.iter().map(|d| d.to_string()).collect();
                format!("{} [{}]", dims.join("/"), gens)
            };
            s.push_str(&format!(",{entry}"));
        }
        s.push('\n');
    }
    s
}

fn table(signature: &str, order_bound: u32, format: TableFormat) -> Outcome {
    let (p, q) = pair(signature)?;
    let limit = max_order()?;
    if order_bound > limit {
        return Err(sbo_core::SboError::OrderBoundTooLarge {
            requested: order_bound as usize,
            max: limit as usize,
        }
        .into());
    }
    let report = table_n4(p, q, order_bound)?;
    match format {
        TableFormat::Matrix => print!("{}", matrix(&report)),
        TableFormat::Csv => print!("{}", report.to_csv()),
        TableFormat::Json => {
            print_json(&serde_json::to_value(&report).map_err(anyhow::Error::from)?)
        }
    }
    let bad: Vec<String> = report
        .rows
        .iter()
        .filter(|r| !r.pass)
        .map(|r| format!("({},{}) at u={}, v={}", r.i, r.j, r.u, r.v))
        .collect();
    if bad.is_empty() {
        Ok(())
    } else {
        Err(math(format!("table mismatch at {}", bad.join("; "))))
    }
}

fn stereo(space: &SpaceArgs) -> anyhow::Result<StereoPair> {
    Ok(StereoPair::new(space.p, space.q, variant(&space.variant)?)?)
}

/// Deterministic test forms of every degree on `n` variables.
fn sample_forms(n: usize) -> Vec<RatForm> {
    (0..=n)
        .map(|deg| {
            let idx: Vec<usize> = (0..deg).collect();
            let mut f = MPoly::one(n);
            for k in 0..n {
                f = &f + &MPoly::var(n, k).pow((k % 2 + 1) as u32);
            }
            Form::from_comps(n, deg, [(idx, RatFunc::from_poly(f))])
        })
        .collect()
}

fn spaceform(check: SpaceformCheck) -> Outcome {
    match check {
        SpaceformCheck::Factor { space } => {
            let s = stereo(&space)?;
            let quadric = s.quadric_residual()?;
            let round = s.round_trip()?;
            let identity = round
                .comps()
                .iter()
                .enumerate()
                .all(|(k, c)| *c == RatFunc::from_poly(MPoly::var(s.n(), k)));
            let phi = s.phi_metric_residual()?;
            let psi = s.psi_metric_residual()?;
            println!("S^({},{}) chart, variant {}", s.p(), s.q(), s.variant());
            println!("quadric residual: {quadric}");
            println!("psi o phi = id: {identity}");
            println!("phi factor 16/(Q+4)^2: residual entries {}", phi.len());
            println!("psi factor 4/(1+w0)^2: residual entries {}", psi.len());
            if quadric.is_zero() && identity && phi.is_empty() && psi.is_empty() {
                println!("residual: 0");
                Ok(())
            } else {
                Err(math("a chart identity failed"))
            }
        }
        SpaceformCheck::Inverse { space, v } => {
            let s = stereo(&space)?;
            let v = rational(&v)?;
            for beta in sample_forms(s.n()) {
                let up = s.to_sphere(&v, &beta)?;
                let back = s.to_flat(&v, &up)?;
                if back != beta {
                    return Err(math(format!(
                        "twisted pullbacks do not invert on a {}-form",
                        beta.degree()
                    )));
                }
            }
            println!("twisted pullbacks invert each other at v = {v}: pass");
            Ok(())
        }
        SpaceformCheck::Lemma61 { p, q, ell, family } => {
            let ops: Vec<BasicOp> = match family {
                Some(f) => vec![BasicOp::FullSbo(f.parse::<Family>()?)],
                None => BasicOp::ROWS
                    .into_iter()
                    .chain(Family::ALL.map(BasicOp::FullSbo))
                    .collect(),
            };
            let mut ran = 0;
            for op in ops {
                for i in 0..=p + q {
                    let check = match lemma61_restriction_check(op, p, q, i, ell) {
                        Ok(c) => c,
                        Err(sbo_core::SboError::InadmissibleSpec(_))
                        | Err(sbo_core::SboError::ShapeMismatch(_))
                        | Err(sbo_core::SboError::DegreeOverflow { .. }) => continue,
                        Err(e) => return Err(e.into()),
                    };
                    ran += 1;
                    println!(
                        "{:<12} i={} ell={}  expected phase {}  found {}  {}",
                        check.op,
                        i,
                        ell,
                        check.expected,
                        check.found.as_deref().unwrap_or("none"),
                        if check.pass { "ok" } else { "MISMATCH" }
                    );
                    if !check.pass {
                        return Err(Failure::Math(format!(
                            "phase mismatch for {} at i={i}",
                            check.op
                        )));
                    }
                }
            }
            if ran == 0 {
                return Err(Failure::Usage(anyhow!(
                    "no admissible configuration for these parameters"
                )));
            }
            Ok(())
        }
        SpaceformCheck::Chart { space, point } => {
            let s = stereo(&space)?;
            let coords: Vec<Scalar> = point
                .split(',')
                .map(|c| rational(c.trim()))
                .collect::<anyhow::Result<_>>()?;
            if coords.len() != s.n() {
                return Err(Failure::Usage(anyhow!(
                    "expected {} coordinates, got {}",
                    s.n(),
                    coords.len()
                )));
            }
            let image: Vec<String> = s
                .phi()
                .comps()
                .iter()
                .map(|c| {
                    c.eval(&coords)
                        .map(|x| x.to_string())
                        .ok_or_else(|| anyhow!("the chart is singular here"))
                })
                .collect::<anyhow::Result<_>>()?;
            let factor = s
                .phi_factor()?
                .eval(&coords)
                .ok_or_else(|| anyhow!("the factor is singular here"))?;
            print_json(&json!({"point": point, "image": image, "factor": factor.to_string()}));
            Ok(())
        }
    }
}

/// Reads an operator file, accepting either a bare operator or the output of `build`.
fn load_operator(path: &Path) -> anyhow::Result<sbo_core::sbo::FormOperator> {
    let value = read_json(path)?;
    let op = value.get("operator").unwrap_or(&value);
    Ok(op_from_json(op)?)
}
