//! The covariance residual `π_v(Z|_Y) ∘ D − D ∘ Π_u(Z)` and its
//! verification against a generator set.

use serde_json::{json, Value};

use crate::algebra::{MPoly, Monomial, ParamScalar};
use crate::conformal::{build_generators, ConfField, GenLabel, GeneratorSet};
use crate::error::{Result, SboError};
use crate::exterior::basis;
use crate::exterior::{Metric, PolyForm};
use crate::sbo::builders::multiplier;
use crate::sbo::json::op_to_json;
use crate::sbo::{build_sbo, FormOperator, SboSpec};

/// `π_v(Z|_Y) ∘ D − D ∘ Π_u(Z)` for a restricting operator `D` on the
/// flat space with metric `g`.
pub fn covariance_residual(
    d: &FormOperator,
    z: &ConfField,
    g: &Metric,
    u: &ParamScalar,
    v: &ParamScalar,
) -> Result<FormOperator> {
    check_shape(d, g)?;
    if z.nvars() != g.n() {
        return Err(SboError::ShapeMismatch(format!(
            "generator on {} variables for a metric on {}",
            z.nvars(),
            g.n()
        )));
    }
    let zy = z.restrict(&g.hyperplane())?;
    let lhs = multiplier(&zy, v, d.dst_degree())?.compose(d)?;
    let rhs = d.compose(&multiplier(z, u, d.src_degree())?)?;
    lhs.sub(&rhs)
}

fn check_shape(d: &FormOperator, g: &Metric) -> Result<()> {
    if !d.is_restricted() || d.n() != g.n() {
        return Err(SboError::ShapeMismatch(format!(
            "covariance needs a restricting operator from R^{}, got {}",
            g.n(),
            d.shape()
        )));
    }
    Ok(())
}

/// All monomials of total degree `≤ max_deg` in `n` variables.
pub fn monomials_up_to(n: usize, max_deg: u32) -> Vec<Monomial> {
    let mut out = vec![Monomial::one()];
    let mut layer = vec![Monomial::one()];
    for _ in 0..max_deg {
        let mut next = Vec::new();
        for m in &layer {
            // extend only at or after the last used variable to avoid repeats
            let start = (0..n).rev().find(|&k| m.exp(k) > 0).unwrap_or(0);
            for k in start..n {
                next.push(m.mul(&Monomial::var(k)));
            }
        }
        out.extend(next.iter().copied());
        layer = next;
    }
    out
}

/// Decides covariance by acting on every monomial `i`-form of polynomial
/// degree `≤ order(D) + 1`, computing both sides pointwise from the
/// form-level multiplier representation. Returns the offending input if
/// any.
pub fn residual_by_action(
    d: &FormOperator,
    z: &ConfField,
    g: &Metric,
    u: &ParamScalar,
    v: &ParamScalar,
) -> Result<Option<PolyForm>> {
    check_shape(d, g)?;
    let zy = z.restrict(&g.hyperplane())?;
    let n = g.n();
    let max_deg = d.order().unwrap_or(0) + 1;
    for idx in basis::combinations(n, d.src_degree()) {
        for m in monomials_up_to(n, max_deg) {
            let alpha = PolyForm::from_comps(
                n,
                d.src_degree(),
                [(idx.clone(), MPoly::monomial(n, m, ParamScalar::from_int(1)))],
            );
            let lhs = zy.multiplier_rep(v, &d.apply(&alpha)?)?;
            let rhs = d.apply(&z.multiplier_rep(u, &alpha)?)?;
            if !lhs.sub(&rhs).is_zero() {
                return Ok(Some(alpha));
            }
        }
    }
    Ok(None)
}

/// Outcome of checking one operator against a generator set.
#[derive(Clone, Debug)]
pub struct CovarianceReport {
    /// Human-readable description of what was checked.
    pub subject: String,
    pub spec: Option<SboSpec>,
    pub operator: FormOperator,
    pub generators: GeneratorSet,
    pub u: ParamScalar,
    pub v: ParamScalar,
    /// One residual per generator, in generator order.
    pub residuals: Vec<(GenLabel, FormOperator)>,
    pub pass: bool,
    /// Highest polynomial degree of test forms that the residual's order
    /// certifies (`order(D) + 1`).
    pub max_degree_checked: u32,
}

impl CovarianceReport {
    /// Labels of the generators with nonzero residual.
    pub fn failures(&self) -> Vec<GenLabel> {
        self.residuals
            .iter()
            .filter(|(_, r)| !r.is_zero())
            .map(|(l, _)| *l)
            .collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "subject": self.subject,
            "verdict": if self.pass { "pass" } else { "fail" },
            "u": self.u.to_string(),
            "v": self.v.to_string(),
            "max_degree_checked": self.max_degree_checked,
            "operator": op_to_json(&self.operator),
            "generators": self.generators.to_json(),
            "residuals": self.residuals.iter().map(|(l, r)| json!({
                "generator": l.to_string(),
                "zero": r.is_zero(),
                "residual": op_to_json(r),
            })).collect::<Vec<_>>(),
        })
    }
}

/// Checks a restricting operator against every tangential generator of `g`.
pub fn verify_operator(
    d: &FormOperator,
    g: &Metric,
    u: &ParamScalar,
    v: &ParamScalar,
) -> Result<CovarianceReport> {
    check_shape(d, g)?;
    let generators = build_generators(g, true)?;
    let residuals = generators
        .fields()
        .iter()
        .map(|z| Ok((z.label(), covariance_residual(d, z, g, u, v)?)))
        .collect::<Result<Vec<_>>>()?;
    let pass = residuals.iter().all(|(_, r)| r.is_zero());
    Ok(CovarianceReport {
        subject: format!("{} on R^({},{})_{}", d.shape(), g.p(), g.q(), g.variant()),
        spec: None,
        operator: d.clone(),
        generators,
        u: u.clone(),
        v: v.clone(),
        residuals,
        pass,
        max_degree_checked: d.order().unwrap_or(0) + 1,
    })
}

/// Builds the family member and checks it; `symbolic_u` replaces the
/// spec's weight by the free parameter `u`.
pub fn verify_family(spec: &SboSpec, symbolic_u: bool) -> Result<CovarianceReport> {
    let mut spec = spec.clone();
    if symbolic_u {
        spec.u = ParamScalar::u();
    }
    let d = build_sbo(&spec)?;
    let mut report = verify_operator(&d, &spec.metric(), &spec.u, &spec.v())?;
    report.subject = spec.to_string();
    report.spec = Some(spec);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_count() {
        // C(n + d, d)
        assert_eq!(monomials_up_to(4, 3).len(), 35);
        assert_eq!(monomials_up_to(3, 0).len(), 1);
    }
}
