//! Conformal vector fields of flat `R^{p,q}`, the subalgebra tangential to
//! the hyperplane `x_n = 0`, and the multiplier representation
//! `Π_u(Z) α = L_Z α + (u/2) ρ(Z) α`.

use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value};

use crate::algebra::linsolve;
use crate::algebra::{MPoly, Monomial, ParamScalar, Scalar};
use crate::error::{Result, SboError};
use crate::exterior::{Metric, PolyForm, VectorField};

/// Which standard generator a field is (indices 0-based).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum GenLabel {
    Translation(usize),
    Rotation(usize, usize),
    Dilation,
    Special(usize),
    /// A field obtained by restriction or other derivation.
    Other,
}

impl fmt::Display for GenLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenLabel::Translation(k) => write!(f, "T{}", k + 1),
            GenLabel::Rotation(j, k) => write!(f, "R{}{}", j + 1, k + 1),
            GenLabel::Dilation => write!(f, "E"),
            GenLabel::Special(k) => write!(f, "K{}", k + 1),
            GenLabel::Other => write!(f, "Z"),
        }
    }
}

/// The symmetric tensor `L_Z g` as a map `(a, b) -> entry` with `a ≤ b`.
pub fn lie_derivative_of_metric(
    z: &VectorField,
    g: &Metric,
) -> Result<BTreeMap<(usize, usize), MPoly>> {
    let n = g.n();
    if z.nvars() != n {
        return Err(SboError::DimensionMismatch {
            expected: n,
            got: z.nvars(),
        });
    }
    let mut out = BTreeMap::new();
    for a in 0..n {
        for b in a..n {
            // (L_Z g)_{ab} = ε_b ∂_a Z^b + ε_a ∂_b Z^a
            let t1 = z.comps()[b]
                .diff(a)?
                .scale_scalar(&Scalar::from_int(g.sign(b)));
            let t2 = z.comps()[a]
                .diff(b)?
                .scale_scalar(&Scalar::from_int(g.sign(a)));
            let e = &t1 + &t2;
            if !e.is_zero() {
                out.insert((a, b), e);
            }
        }
    }
    Ok(out)
}

/// The function `ρ` with `L_Z g = ρ g`, if it exists.
pub fn conformal_factor(z: &VectorField, g: &Metric) -> Result<MPoly> {
    let n = g.n();
    let lzg = lie_derivative_of_metric(z, g)?;
    if let Some(((a, b), _)) = lzg.iter().find(|((a, b), _)| a != b) {
        return Err(SboError::NotConformal(format!(
            "L_Z g has an off-diagonal dx{}dx{} term",
            a + 1,
            b + 1
        )));
    }
    let diag = |a: usize| {
        lzg.get(&(a, a))
            .cloned()
            .unwrap_or_else(|| MPoly::zero(n))
            .scale_scalar(&Scalar::from_int(g.sign(a)))
    };
    let rho = diag(0);
    for a in 1..n {
        if diag(a) != rho {
            return Err(SboError::NotConformal(format!(
                "L_Z g is not proportional to g in direction {}",
                a + 1
            )));
        }
    }
    Ok(rho)
}

/// A conformal vector field with its conformal factor.
#[derive(Clone, Debug, PartialEq)]
pub struct ConfField {
    z: VectorField,
    rho: MPoly,
    label: GenLabel,
}

impl ConfField {
    /// Validates `z` against `g` and records its conformal factor.
    pub fn new(z: VectorField, g: &Metric, label: GenLabel) -> Result<Self> {
        let rho = conformal_factor(&z, g)?;
        Ok(ConfField { z, rho, label })
    }

    pub fn field(&self) -> &VectorField {
        &self.z
    }

    pub fn rho(&self) -> &MPoly {
        &self.rho
    }

    pub fn label(&self) -> GenLabel {
        self.label
    }

    pub fn nvars(&self) -> usize {
        self.z.nvars()
    }

    /// True if the last component vanishes on `x_last = 0`.
    pub fn is_tangential(&self) -> bool {
        let n = self.nvars();
        self.z.comps()[n - 1].restrict_last().is_zero()
    }

    /// The induced field on the hyperplane, validated against the induced
    /// metric `h`; its conformal factor is recomputed, not copied.
    pub fn restrict(&self, h: &Metric) -> Result<ConfField> {
        if !self.is_tangential() {
            return Err(SboError::NonTangentialGenerator(self.label.to_string()));
        }
        ConfField::new(self.z.restrict(), h, self.label)
    }

    /// `Π_u(Z) α = L_Z α + (u/2) ρ α`.
    pub fn multiplier_rep(&self, u: &ParamScalar, alpha: &PolyForm) -> Result<PolyForm> {
        let lie = self.z.lie_derivative(alpha)?;
        let half_u = u.scale(&Scalar::frac(1, 2));
        let weight = self.rho.scale(&half_u);
        Ok(lie.add(&alpha.mul_fn(&weight)))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "label": self.label.to_string(),
            "components": self.z.comps().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "rho": self.rho.to_string(),
        })
    }
}

/// A list of conformal generators for one metric.
#[derive(Clone, Debug)]
pub struct GeneratorSet {
    metric: Metric,
    fields: Vec<ConfField>,
    tangential: bool,
}

/// `⟨x, x⟩_ε = Σ ε_j x_j²`.
fn quadratic_form(g: &Metric) -> MPoly {
    let n = g.n();
    let mut q = MPoly::zero(n);
    for j in 0..n {
        q.add_term(
            Monomial::var(j).mul(&Monomial::var(j)),
            ParamScalar::from_int(g.sign(j)),
        );
    }
    q
}

/// Translations, rotations, the dilation and the special conformal fields
/// of `g`, each validated by [`conformal_factor`]. The tangential variant
/// keeps exactly the fields whose last component vanishes on `x_n = 0`.
pub fn build_generators(g: &Metric, tangential: bool) -> Result<GeneratorSet> {
    let n = g.n();
    let x = |k: usize| MPoly::var(n, k);
    let euler: Vec<MPoly> = (0..n).map(x).collect();
    let mut raw: Vec<(GenLabel, Vec<MPoly>)> = Vec::new();
    for k in 0..n {
        raw.push((
            GenLabel::Translation(k),
            VectorField::coordinate(n, k).comps().to_vec(),
        ));
    }
    for j in 0..n {
        for k in j + 1..n {
            let mut c = vec![MPoly::zero(n); n];
            c[k] = x(j).scale_scalar(&Scalar::from_int(g.sign(j)));
            c[j] = x(k).scale_scalar(&Scalar::from_int(-g.sign(k)));
            raw.push((GenLabel::Rotation(j, k), c));
        }
    }
    raw.push((GenLabel::Dilation, euler.clone()));
    let q = quadratic_form(g);
    for k in 0..n {
        let coef = x(k).scale_scalar(&Scalar::from_int(-2 * g.sign(k)));
        let mut c: Vec<MPoly> = euler.iter().map(|e| e * &coef).collect();
        c[k] = &c[k] + &q;
        raw.push((GenLabel::Special(k), c));
    }
    let mut fields = Vec::new();
    for (label, comps) in raw {
        let f = ConfField::new(VectorField::new(comps)?, g, label)?;
        if !tangential || f.is_tangential() {
            fields.push(f);
        }
    }
    Ok(GeneratorSet {
        metric: g.clone(),
        fields,
        tangential,
    })
}

/// `[Z_1, Z_2]`.
pub fn bracket(a: &ConfField, b: &ConfField) -> Result<VectorField> {
    a.field().bracket(b.field())
}

fn flatten(v: &VectorField, keys: &mut BTreeMap<(usize, Monomial), usize>) -> Vec<(usize, Scalar)> {
    let mut out = Vec::new();
    for (k, c) in v.comps().iter().enumerate() {
        for (m, s) in c.terms() {
            let next = keys.len();
            let idx = *keys.entry((k, *m)).or_insert(next);
            out.push((idx, s.as_constant().expect("u-free vector field")));
        }
    }
    out
}

impl GeneratorSet {
    pub fn metric(&self) -> &Metric {
        &self.metric
    }

    pub fn fields(&self) -> &[ConfField] {
        &self.fields
    }

    pub fn is_tangential(&self) -> bool {
        self.tangential
    }

    pub fn len(&self) -> usize {
        self.fields.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fields.is_empty()
    }

    /// Coefficients expressing `v` in this set, if `v` lies in its span.
    pub fn coordinates(&self, v: &VectorField) -> Option<Vec<Scalar>> {
        let mut keys = BTreeMap::new();
        let cols: Vec<Vec<(usize, Scalar)>> = self
            .fields
            .iter()
            .map(|f| flatten(f.field(), &mut keys))
            .collect();
        let rhs = flatten(v, &mut keys);
        let dense = |s: &[(usize, Scalar)]| {
            let mut d = vec![Scalar::from_int(0); keys.len()];
            for (k, x) in s {
                d[*k] = x.clone();
            }
            d
        };
        let cols: Vec<Vec<Scalar>> = cols.iter().map(|c| dense(c)).collect();
        linsolve::solve(&cols, &dense(&rhs))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "p": self.metric.p(),
            "q": self.metric.q(),
            "variant": self.metric.variant().as_str(),
            "tangential": self.tangential,
            "fields": self.fields.iter().map(ConfField::to_json).collect::<Vec<_>>(),
        })
    }
}
