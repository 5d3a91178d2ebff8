//! Stereographic charts of the space forms `S^{p,q}` and weighted
//! (twisted) pullbacks between flat and curved models.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::algebra::{MPoly, ParamScalar, RatFunc, Scalar};
use crate::error::{Result, SboError};
use crate::exterior::{Metric, RatForm, RationalMap, Variant};
use crate::sbo::FormOperator;

/// A symmetric 2-tensor with rational coefficients, by index pair `k ≤ l`.
pub type Tensor2 = BTreeMap<(usize, usize), RatFunc>;

/// The chart `Φ_ε: R^{p,q}_ε → S^{p,q} ⊂ R^{1+p,q}` with inverse `Ψ_ε`.
///
/// Ambient coordinates are `(ω_0, ω_1..ω_p, η_1..η_q)` with metric
/// `dω_0² + |dω|² − |dη|²`. For variant minus the flat coordinates are
/// `(x_1..x_p, y_1..y_q)`; for variant plus they are `(y_1..y_q,
/// x_1..x_p)`, which composes the chart with the coordinate swap.
#[derive(Clone, Debug)]
pub struct StereoPair {
    p: usize,
    q: usize,
    variant: Variant,
    phi: RationalMap,
    psi: RationalMap,
}

fn int(n: usize, c: i64) -> MPoly {
    MPoly::from_int(n, c)
}

impl StereoPair {
    pub fn new(p: usize, q: usize, variant: Variant) -> Result<Self> {
        let n = p + q;
        if n == 0 {
            return Err(SboError::InadmissibleSpec("a chart needs p + q ≥ 1".into()));
        }
        let (xs, ys): (Vec<usize>, Vec<usize>) = match variant {
            Variant::Minus => ((0..p).collect(), (p..n).collect()),
            Variant::Plus => ((q..n).collect(), (0..q).collect()),
        };
        let g = Metric::new(p, q, variant);
        // Q = |x|² − |y|² is the flat quadratic form in either ordering
        let mut quad = MPoly::zero(n);
        for k in 0..n {
            quad.add_assign_ref(
                &MPoly::var(n, k)
                    .pow(2)
                    .scale_scalar(&Scalar::from_int(g.sign(k))),
            );
        }
        let den = &quad + &int(n, 4);
        let mut phi = vec![RatFunc::new(&int(n, 4) - &quad, den.clone())?];
        for &k in xs.iter().chain(&ys) {
            phi.push(RatFunc::new(
                MPoly::var(n, k).scale_scalar(&Scalar::from_int(4)),
                den.clone(),
            )?);
        }
        let m = n + 1;
        let one_plus = &int(m, 1) + &MPoly::var(m, 0);
        let mut psi = vec![RatFunc::zero(m); n];
        for (a, &k) in xs.iter().chain(&ys).enumerate() {
            psi[k] = RatFunc::new(
                MPoly::var(m, a + 1).scale_scalar(&Scalar::from_int(2)),
                one_plus.clone(),
            )?;
        }
        Ok(StereoPair {
            p,
            q,
            variant,
            phi: RationalMap::new(n, phi)?,
            psi: RationalMap::new(m, psi)?,
        })
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    /// Dimension of the flat space and of `S^{p,q}`.
    pub fn n(&self) -> usize {
        self.p + self.q
    }

    /// The flat metric of the chart domain.
    pub fn flat_metric(&self) -> Metric {
        Metric::new(self.p, self.q, self.variant)
    }

    /// The ambient metric of `R^{1+p,q}`.
    pub fn ambient_metric(&self) -> Metric {
        Metric::new(1 + self.p, self.q, Variant::Minus)
    }

    pub fn phi(&self) -> &RationalMap {
        &self.phi
    }

    pub fn psi(&self) -> &RationalMap {
        &self.psi
    }

    /// `Q = |x|² − |y|²` on the flat space.
    pub fn flat_quadratic(&self) -> MPoly {
        let n = self.n();
        let g = self.flat_metric();
        let mut quad = MPoly::zero(n);
        for k in 0..n {
            quad.add_assign_ref(
                &MPoly::var(n, k)
                    .pow(2)
                    .scale_scalar(&Scalar::from_int(g.sign(k))),
            );
        }
        quad
    }

    /// `ω_0² + |ω|² − |η|² − 1` pulled back by `Φ` (zero on the quadric).
    pub fn quadric_residual(&self) -> Result<RatFunc> {
        let g = self.ambient_metric();
        let mut acc = RatFunc::from_poly(int(self.n(), -1));
        for (a, c) in self.phi.comps().iter().enumerate() {
            acc = &acc + &(c * c).scale(&ParamScalar::from_int(g.sign(a)));
        }
        Ok(acc.reduced())
    }

    /// `Ψ ∘ Φ`, which must be the identity of the flat space.
    pub fn round_trip(&self) -> Result<RationalMap> {
        self.psi.compose(&self.phi)
    }

    /// The factor `16/(Q + 4)²` of `Φ^* g_S = 16/(Q+4)² g_flat`.
    pub fn phi_factor(&self) -> Result<RatFunc> {
        let n = self.n();
        let den = &self.flat_quadratic() + &int(n, 4);
        RatFunc::new(int(n, 16), den.pow(2))
    }

    /// `Φ^* g_S − 16/(Q+4)² g_flat` as a tensor on the flat space.
    pub fn phi_metric_residual(&self) -> Result<Tensor2> {
        let n = self.n();
        let pulled = pullback_metric(&self.phi, &diag(&self.ambient_metric()))?;
        let factor = self.phi_factor()?;
        let flat = self.flat_metric();
        let mut out = Tensor2::new();
        for k in 0..n {
            for l in k..n {
                let mut r = pulled
                    .get(&(k, l))
                    .cloned()
                    .unwrap_or_else(|| RatFunc::zero(n));
                if k == l {
                    r = &r - &factor.scale(&ParamScalar::from_int(flat.sign(k)));
                }
                let r = r.reduced();
                if !r.is_zero() {
                    out.insert((k, l), r);
                }
            }
        }
        Ok(out)
    }

    /// `Ψ^* g_flat − 4/(1+ω_0)² g_amb`, restricted to the quadric by
    /// pulling back through `Φ`.
    pub fn psi_metric_residual(&self) -> Result<Tensor2> {
        let m = self.n() + 1;
        let ambient = self.ambient_metric();
        let psi_g = pullback_metric(&self.psi, &diag(&self.flat_metric()))?;
        let one_plus = &int(m, 1) + &MPoly::var(m, 0);
        let factor = RatFunc::new(int(m, 4), one_plus.pow(2))?;
        let mut resid = psi_g;
        for a in 0..m {
            let e = resid.entry((a, a)).or_insert_with(|| RatFunc::zero(m));
            *e = &*e - &factor.scale(&ParamScalar::from_int(ambient.sign(a)));
        }
        let pulled = pullback_tensor(&self.phi, &resid)?;
        Ok(pulled
            .into_iter()
            .map(|(k, v)| (k, v.reduced()))
            .filter(|(_, v)| !v.is_zero())
            .collect())
    }

    /// The weight factor `((1 + ω_0)/2)^{−v}` on the ambient space.
    pub fn sphere_weight(&self, v: i64) -> Result<RatFunc> {
        let m = self.n() + 1;
        let base = RatFunc::new(&int(m, 1) + &MPoly::var(m, 0), int(m, 2))?;
        base.powi(-v)
    }

    /// The weight factor `((Q + 4)/4)^{−v}` on the flat space.
    pub fn flat_weight(&self, v: i64) -> Result<RatFunc> {
        let n = self.n();
        let base = RatFunc::new(&self.flat_quadratic() + &int(n, 4), int(n, 4))?;
        base.powi(-v)
    }

    /// `(Φ)_*^v α = ((1+ω_0)/2)^{−v} Ψ^* α`: flat forms to forms on the
    /// chart of `S^{p,q}` (in ambient coordinates).
    pub fn to_sphere(&self, v: &Scalar, alpha: &RatForm) -> Result<RatForm> {
        let v = integer_weight(v)?;
        let pulled = self.psi.pullback(alpha)?;
        Ok(pulled.mul_fn(&self.sphere_weight(v)?).map(RatFunc::reduced))
    }

    /// `(Ψ)_*^v β = ((Q+4)/4)^{−v} Φ^* β`: forms on `S^{p,q}` (ambient
    /// coordinates) to flat forms.
    pub fn to_flat(&self, v: &Scalar, beta: &RatForm) -> Result<RatForm> {
        let v = integer_weight(v)?;
        let pulled = self.phi.pullback(beta)?;
        Ok(pulled.mul_fn(&self.flat_weight(v)?).map(RatFunc::reduced))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "p": self.p,
            "q": self.q,
            "variant": self.variant.as_str(),
            "phi": self.phi.comps().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "psi": self.psi.comps().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        })
    }
}

fn integer_weight(v: &Scalar) -> Result<i64> {
    v.to_i64()
        .ok_or_else(|| SboError::NonIntegerWeight(v.to_string()))
}

fn diag(g: &Metric) -> Tensor2 {
    let n = g.n();
    (0..n)
        .map(|k| ((k, k), RatFunc::from_poly(MPoly::from_int(n, g.sign(k)))))
        .collect()
}

/// `F^* G` for a symmetric tensor `G` on the target of `F`.
pub fn pullback_tensor(f: &RationalMap, g: &Tensor2) -> Result<Tensor2> {
    let n = f.source_dim();
    let jac: Vec<Vec<RatFunc>> = f
        .comps()
        .iter()
        .map(|c| {
            (0..n)
                .map(|k| c.diff(k).map(|d| d.reduced()))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let mut out = Tensor2::new();
    for (&(a, b), gab) in g {
        let gab = f.pullback_fn(gab)?.reduced();
        for k in 0..n {
            for l in k..n {
                let mut t = &jac[a][k] * &jac[b][l];
                if a != b {
                    t = &t + &(&jac[b][k] * &jac[a][l]);
                }
                if t.is_zero() {
                    continue;
                }
                let e = out.entry((k, l)).or_insert_with(|| RatFunc::zero(n));
                *e = (&*e + &(&gab * &t)).reduced();
            }
        }
    }
    Ok(out)
}

fn pullback_metric(f: &RationalMap, g: &Tensor2) -> Result<Tensor2> {
    pullback_tensor(f, g)
}

/// A flat operator conjugated to the space forms:
/// `(Φ_Y)_*^v ∘ D ∘ (Ψ_X)_*^u` on the chart of `S^{p,q}`.
#[derive(Clone, Debug)]
pub struct TransferredOperator {
    pub source: StereoPair,
    pub target: StereoPair,
    pub operator: FormOperator,
    pub u: Scalar,
    pub v: Scalar,
}

/// Builds the curved-space operator from a restricting flat operator. The
/// target chart is the one of the hyperplane metric.
pub fn transfer_operator(
    pair: &StereoPair,
    d: &FormOperator,
    u: &Scalar,
    v: &Scalar,
) -> Result<TransferredOperator> {
    integer_weight(u)?;
    integer_weight(v)?;
    if !d.is_restricted() || d.n() != pair.n() {
        return Err(SboError::ShapeMismatch(format!(
            "transfer needs a restricting operator from R^{}, got {}",
            pair.n(),
            d.shape()
        )));
    }
    let h = pair.flat_metric().hyperplane();
    let target = StereoPair::new(h.p(), h.q(), h.variant())?;
    Ok(TransferredOperator {
        source: pair.clone(),
        target,
        operator: d.clone(),
        u: u.clone(),
        v: v.clone(),
    })
}

impl TransferredOperator {
    /// Applies the conjugated operator to a form on the chart of the source
    /// space form (ambient coordinates).
    pub fn apply(&self, beta: &RatForm) -> Result<RatForm> {
        let flat = self.source.to_flat(&self.u, beta)?;
        let image = self.operator.apply_rat(&flat)?;
        self.target.to_sphere(&self.v, &image.map(RatFunc::reduced))
    }

    /// Names the target space form, e.g. `S^(1,2)`.
    pub fn describe(&self) -> String {
        format!(
            "S^({},{}) -> S^({},{}) ({}-forms -> {}-forms)",
            self.source.p(),
            self.source.q(),
            self.target.p(),
            self.target.q(),
            self.operator.src_degree(),
            self.operator.dst_degree()
        )
    }
}
