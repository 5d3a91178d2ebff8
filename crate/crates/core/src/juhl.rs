//! Renormalized Gegenbauer polynomials and the scalar Juhl-type operators
//! `D^μ_ℓ = Σ_k a_k(μ, ℓ) Δ^k ∂_n^{ℓ−2k}` on flat `R^{p,q}`.

use num_traits::{One, Zero};

use crate::algebra::{MPoly, Monomial, ParamScalar, Scalar};
use crate::error::{Result, SboError};
use crate::exterior::Metric;

fn factorial(k: usize) -> Scalar {
    (1..=k).fold(Scalar::one(), |acc, m| &acc * &Scalar::from_int(m as i64))
}

/// `a_k(μ, ℓ) = (−1)^k 2^{ℓ−2k} / (k! (ℓ−2k)!) · Π_{m=⌊(ℓ+1)/2⌋}^{ℓ−k−1} (μ + m)`.
///
/// The product is the Gamma ratio `Γ(ℓ−k+μ) / Γ(μ+⌊(ℓ+1)/2⌋)` written as a
/// rising factorial, so the result is a polynomial in `μ`.
pub fn gegenbauer_coeff(mu: &ParamScalar, ell: usize, k: usize) -> Result<ParamScalar> {
    if 2 * k > ell {
        return Err(SboError::InvalidIndex {
            twice_k: 2 * k,
            ell,
        });
    }
    let sign = if k.is_multiple_of(2) { 1 } else { -1 };
    let num = Scalar::from_int(sign) * Scalar::from_int(2).pow((ell - 2 * k) as u32);
    let den = &factorial(k) * &factorial(ell - 2 * k);
    let mut acc = ParamScalar::constant(num.checked_div(&den)?);
    for m in ell.div_ceil(2)..ell - k {
        acc = &acc * &(mu + &ParamScalar::from_int(m as i64));
    }
    Ok(acc)
}

/// `γ(μ, a)`: 1 for odd `a`, `μ + a/2` for even `a`.
pub fn gamma_factor(mu: &ParamScalar, a: i64) -> ParamScalar {
    if a.rem_euclid(2) == 1 {
        ParamScalar::one()
    } else {
        mu + &ParamScalar::frac(a, 2)
    }
}

/// `C̃^μ_ℓ(t) = Σ_k a_k(μ, ℓ) t^{ℓ−2k}`.
#[derive(Clone, Debug, PartialEq)]
pub struct GegenbauerPoly {
    mu: ParamScalar,
    ell: usize,
    coeffs: Vec<ParamScalar>,
}

impl GegenbauerPoly {
    pub fn new(mu: &ParamScalar, ell: usize) -> GegenbauerPoly {
        let coeffs = (0..=ell / 2)
            .map(|k| gegenbauer_coeff(mu, ell, k).expect("index in range"))
            .collect();
        GegenbauerPoly {
            mu: mu.clone(),
            ell,
            coeffs,
        }
    }

    pub fn mu(&self) -> &ParamScalar {
        &self.mu
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    /// `a_0, a_1, …, a_{⌊ℓ/2⌋}`.
    pub fn coeffs(&self) -> &[ParamScalar] {
        &self.coeffs
    }

    /// The polynomial in one variable `t`.
    pub fn to_poly(&self) -> MPoly {
        MPoly::from_terms(
            1,
            self.coeffs.iter().enumerate().map(|(k, a)| {
                (
                    Monomial::from_exponents(&[(self.ell - 2 * k) as u32]),
                    a.clone(),
                )
            }),
        )
    }

    /// Dense coefficients by power of `t` (index = power) once `μ` is a
    /// number; `None` while `μ` is still symbolic.
    pub fn dense(&self) -> Option<Vec<Scalar>> {
        let mut out = vec![Scalar::zero(); self.ell + 1];
        for (k, a) in self.coeffs.iter().enumerate() {
            out[self.ell - 2 * k] = a.as_constant()?;
        }
        Some(out)
    }

    /// Monic gcd of all coefficients as polynomials in `u` (when `μ` is
    /// expressed through `u`).
    pub fn coefficient_gcd(&self) -> ParamScalar {
        self.coeffs
            .iter()
            .fold(ParamScalar::zero(), |g, a| g.gcd(a))
    }
}

/// `(1 − t²) C'' − (2μ + 1) t C' + ℓ(ℓ + 2μ) C` for `C = C̃^μ_ℓ`.
pub fn gegenbauer_ode_residual(mu: &ParamScalar, ell: usize) -> MPoly {
    let c = GegenbauerPoly::new(mu, ell).to_poly();
    let t = MPoly::var(1, 0);
    let c1 = c.diff_unchecked(0);
    let c2 = c1.diff_unchecked(0);
    let one_minus_t2 = &MPoly::one(1) - &(&t * &t);
    let two_mu_plus_one = &mu.scale(&Scalar::from_int(2)) + &ParamScalar::one();
    let eig = ParamScalar::from_int(ell as i64)
        * (mu.scale(&Scalar::from_int(2)) + ParamScalar::from_int(ell as i64));
    let a = &one_minus_t2 * &c2;
    let b = (&t * &c1).scale(&two_mu_plus_one);
    &(&a - &b) + &c.scale(&eig)
}

/// Renders a dense univariate polynomial (index = power) in descending
/// powers: integer coefficients are juxtaposed (`4t^2 - 1`), others are
/// parenthesized (`(1/2)t`).
pub fn render_univariate(coeffs: &[Scalar], var: &str) -> String {
    let mut out = String::new();
    for (k, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative_real();
        let mag = if neg { -c } else { c.clone() };
        let pow = match k {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{k}"),
        };
        let coef = if k > 0 && mag.is_one() {
            String::new()
        } else if mag.is_integer() || k == 0 && mag.is_real() {
            mag.to_string()
        } else {
            format!("({mag})")
        };
        let body = format!("{coef}{pow}");
        match (out.is_empty(), neg) {
            (true, true) => out.push('-'),
            (true, false) => {}
            (false, true) => out.push_str(" - "),
            (false, false) => out.push_str(" + "),
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// The scalar operator `D^μ_ℓ` as a constant-coefficient symbol: the
/// monomial `ξ^α` stands for `∂^α`.
#[derive(Clone, Debug, PartialEq)]
pub struct ScalarJuhlOp {
    metric: Metric,
    mu: ParamScalar,
    ell: i64,
    symbol: MPoly,
}

/// The hyperplane Laplacian `Δ = −ε_n Σ_{j<n} ε_j ∂_j²` as a symbol.
pub fn signed_laplacian(metric: &Metric) -> MPoly {
    let n = metric.n();
    let en = metric.last_sign();
    let mut s = MPoly::zero(n);
    for j in 0..n - 1 {
        s.add_term(
            Monomial::var(j).mul(&Monomial::var(j)),
            ParamScalar::from_int(-en * metric.sign(j)),
        );
    }
    s
}

/// `D^μ_ℓ` on the metric's coordinates (zero operator for `ℓ < 0`).
pub fn scalar_juhl(metric: &Metric, mu: &ParamScalar, ell: i64) -> ScalarJuhlOp {
    let n = metric.n();
    let mut symbol = MPoly::zero(n);
    if ell >= 0 {
        let ell_u = ell as usize;
        let lap = signed_laplacian(metric);
        let mut lap_k = MPoly::one(n);
        for k in 0..=ell_u / 2 {
            let a = gegenbauer_coeff(mu, ell_u, k).expect("index in range");
            let normal = Monomial::var(n - 1);
            let mut dn = Monomial::one();
            for _ in 0..ell_u - 2 * k {
                dn = dn.mul(&normal);
            }
            symbol.add_assign_ref(&lap_k.mul_monomial(&dn).scale(&a));
            lap_k = &lap_k * &lap;
        }
    }
    ScalarJuhlOp {
        metric: metric.clone(),
        mu: mu.clone(),
        ell,
        symbol,
    }
}

impl ScalarJuhlOp {
    pub fn metric(&self) -> &Metric {
        &self.metric
    }

    pub fn mu(&self) -> &ParamScalar {
        &self.mu
    }

    pub fn ell(&self) -> i64 {
        self.ell
    }

    /// Constant-coefficient symbol: `ξ^α` encodes `∂^α`.
    pub fn symbol(&self) -> &MPoly {
        &self.symbol
    }

    /// Applies the operator to a function.
    pub fn apply(&self, f: &MPoly) -> Result<MPoly> {
        if f.nvars() != self.metric.n() {
            return Err(SboError::MetricDimensionMismatch {
                metric: self.metric.n(),
                form: f.nvars(),
            });
        }
        let mut out = MPoly::zero(f.nvars());
        for (m, c) in self.symbol.terms() {
            let alpha = m.exponents(f.nvars());
            out.add_assign_ref(&f.diff_multi(&alpha).scale(c));
        }
        Ok(out)
    }
}
