//! Restriction of holomorphic-model operators on `C^n` to the real form
//! `R^{p,q}_−` via `z_k = x_k` (first `p`) and `z_k = i·y_k` (last `q`),
//! and the resulting phases.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::{MPoly, Monomial, ParamScalar, Scalar};
use crate::error::{Result, SboError};
use crate::exterior::{Metric, Variant};
use crate::juhl::scalar_juhl;
use crate::sbo::builders::{codifferential, ext_d, normal_interior};
use crate::sbo::{build_sbo, Family, FormOperator, SboSpec};

/// `Π_{k ∈ idx, k ≥ p} (−i)`.
fn index_factor(idx: &[usize], p: usize) -> Scalar {
    Scalar::i_pow(-(idx.iter().filter(|&&k| k >= p).count() as i64))
}

/// Substitutes `z_k = i·x_k` for `k ≥ p` in a coefficient polynomial.
fn substitute(poly: &MPoly, p: usize) -> MPoly {
    let n = poly.nvars();
    MPoly::from_terms(
        n,
        poly.terms().map(|(m, c)| {
            let e: u32 = (p..n).map(|k| m.exp(k)).sum();
            (*m, c.scale(&Scalar::i_pow(e as i64)))
        }),
    )
}

/// The real-form operator induced by a holomorphic-model operator with the
/// same term data: `∂_{z_k} ↦ −i ∂_{y_k}`, `dz_k ↦ i dy_k` for `k ≥ p`.
pub fn holomorphic_restriction(op: &FormOperator, p: usize) -> FormOperator {
    let n = op.n();
    let src = op.src_basis();
    let dst = op.dst_basis();
    let mut out = FormOperator::zero(n, op.src_degree(), op.dst_degree(), op.is_restricted());
    for (alpha, mat) in op.terms() {
        let e: u32 = (p..n).map(|k| alpha.exp(k)).sum();
        let c_alpha = Scalar::i_pow(-(e as i64));
        for (&(r, c), coef) in mat {
            let f = &(&c_alpha * &index_factor(&src[c], p))
                * &index_factor(&dst[r], p).inv().expect("unit");
            out.add_entry(*alpha, r, c, substitute(coef, p).scale_scalar(&f));
        }
    }
    out
}

/// The constant `c` with `lhs = c · rhs`, if any.
pub fn proportionality(lhs: &FormOperator, rhs: &FormOperator) -> Option<Scalar> {
    let (key, r) = rhs.flat_entries().next()?;
    let l = lhs
        .flat_entries()
        .find(|(k, _)| *k == key)
        .map(|(_, v)| v.clone())?;
    let ratio = l
        .coeffs()
        .iter()
        .zip(r.coeffs())
        .find(|(_, b)| !b.is_zero())
        .map(|(a, b)| a.checked_div(b))?
        .ok()?;
    (*lhs == rhs.scale_scalar(&ratio)).then_some(ratio)
}

/// The operators of the restriction table.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub enum BasicOp {
    D,
    Codifferential,
    NormalDerivative,
    NormalInterior,
    ScalarJuhl,
    FullSbo(Family),
}

impl BasicOp {
    pub const ROWS: [BasicOp; 5] = [
        BasicOp::D,
        BasicOp::Codifferential,
        BasicOp::NormalDerivative,
        BasicOp::NormalInterior,
        BasicOp::ScalarJuhl,
    ];
}

impl fmt::Display for BasicOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasicOp::D => write!(f, "d"),
            BasicOp::Codifferential => write!(f, "dstar"),
            BasicOp::NormalDerivative => write!(f, "dn"),
            BasicOp::NormalInterior => write!(f, "iota"),
            BasicOp::ScalarJuhl => write!(f, "juhl"),
            BasicOp::FullSbo(fam) => write!(f, "sbo({fam})"),
        }
    }
}

impl FromStr for BasicOp {
    type Err = SboError;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "d" => BasicOp::D,
            "dstar" | "d*" => BasicOp::Codifferential,
            "dn" | "normal-derivative" => BasicOp::NormalDerivative,
            "iota" | "interior" => BasicOp::NormalInterior,
            "juhl" | "scalar-juhl" => BasicOp::ScalarJuhl,
            other => BasicOp::FullSbo(other.strip_prefix("sbo:").unwrap_or(other).parse()?),
        })
    }
}

/// Outcome of one restriction check.
#[derive(Clone, Debug, Serialize)]
pub struct PhaseCheck {
    pub op: String,
    pub p: usize,
    pub q: usize,
    pub i: usize,
    pub ell: usize,
    /// The phase predicted by the table.
    pub expected: String,
    /// The phase found by exact comparison.
    pub found: Option<String>,
    pub pass: bool,
}

/// Checks one row of the restriction table on `R^{p,q}_−` (needs `q ≥ 1`):
/// the holomorphic model is the same construction for the complex
/// Euclidean metric, whose normal direction is positive, so its family
/// operators use the plus display.
pub fn lemma61_restriction_check(
    op: BasicOp,
    p: usize,
    q: usize,
    i: usize,
    ell: usize,
) -> Result<PhaseCheck> {
    let n = p + q;
    if q == 0 {
        return Err(SboError::InadmissibleSpec(
            "the real form needs q ≥ 1".into(),
        ));
    }
    let real = Metric::new(p, q, Variant::Minus);
    let cplx = Metric::new(n, 0, Variant::Plus);
    let mu = ParamScalar::u();
    let (model, target, phase_exp) = match op {
        BasicOp::D => (ext_d(n, i)?, ext_d(n, i)?, 0),
        BasicOp::Codifferential => (codifferential(&cplx, i)?, codifferential(&real, i)?, 0),
        BasicOp::NormalDerivative => {
            let sym = MPoly::monomial(n, Monomial::var(n - 1), ParamScalar::one());
            (
                FormOperator::from_symbol(n, i, &sym),
                FormOperator::from_symbol(n, i, &sym),
                1,
            )
        }
        BasicOp::NormalInterior => (normal_interior(n, i)?, normal_interior(n, i)?, 1),
        BasicOp::ScalarJuhl => {
            let l = ell as i64;
            (
                FormOperator::from_symbol(n, i, scalar_juhl(&cplx, &mu, l).symbol()),
                FormOperator::from_symbol(n, i, scalar_juhl(&real, &mu, l).symbol()),
                l,
            )
        }
        BasicOp::FullSbo(family) => {
            let u = match family {
                Family::Lower | Family::Same => ParamScalar::u(),
                Family::LowerTwo if i == n => ParamScalar::from_int(1 - n as i64 - ell as i64),
                Family::LowerTwo => ParamScalar::from_int(n as i64 - 2 * i as i64),
                Family::Raise if i == 0 => ParamScalar::from_int(1 - ell as i64),
                Family::Raise => ParamScalar::from_int(0),
            };
            let spec_c = SboSpec::new(Variant::Plus, n, 0, i, family, u.clone(), ell);
            let spec_r = SboSpec::new(Variant::Minus, p, q, i, family, u, ell);
            let shift = ell as i64 - family.shift();
            (build_sbo(&spec_c)?, build_sbo(&spec_r)?, shift)
        }
    };
    let expected = Scalar::i_pow(-phase_exp);
    let restricted = holomorphic_restriction(&model, p);
    let found = proportionality(&restricted, &target);
    let pass = found.as_ref() == Some(&expected) || (target.is_zero() && restricted.is_zero());
    Ok(PhaseCheck {
        op: op.to_string(),
        p,
        q,
        i,
        ell,
        expected: expected.to_string(),
        found: found.map(|s| s.to_string()),
        pass,
    })
}

/// Like [`lemma61_restriction_check`] but turns a failed check into
/// `PhaseMismatch`.
pub fn require_phase(op: BasicOp, p: usize, q: usize, i: usize, ell: usize) -> Result<PhaseCheck> {
    let c = lemma61_restriction_check(op, p, q, i, ell)?;
    if !c.pass {
        return Err(SboError::PhaseMismatch(format!(
            "{} on R^({p},{q}), i={i}, ell={ell}: expected {}, found {}",
            c.op,
            c.expected,
            c.found.as_deref().unwrap_or("no proportionality")
        )));
    }
    Ok(c)
}
