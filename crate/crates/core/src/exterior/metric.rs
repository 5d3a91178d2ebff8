//! Flat pseudo-Riemannian metrics and the Hodge star.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Result, SboError};

use super::basis;
use super::{Coeff, Form};

/// Coordinate ordering convention for `R^{p,q}`.
///
/// `Plus` puts the `q` negative directions first and ends with a positive
/// one; `Minus` puts the `p` positive directions first and ends with a
/// negative one.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Plus,
    Minus,
}

impl Variant {
    pub fn as_str(self) -> &'static str {
        match self {
            Variant::Plus => "plus",
            Variant::Minus => "minus",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Variant {
    type Err = SboError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plus" | "+" => Ok(Variant::Plus),
            "minus" | "-" => Ok(Variant::Minus),
            _ => Err(SboError::Parse(format!("unknown variant {s:?}"))),
        }
    }
}

/// The diagonal metric `Σ ε_k dx_k²` with `p` positive and `q` negative
/// signs arranged according to a [`Variant`].
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Metric {
    p: usize,
    q: usize,
    variant: Variant,
    signs: Vec<i64>,
}

impl Metric {
    pub fn new(p: usize, q: usize, variant: Variant) -> Metric {
        let signs = match variant {
            Variant::Plus => std::iter::repeat_n(-1, q)
                .chain(std::iter::repeat_n(1, p))
                .collect(),
            Variant::Minus => std::iter::repeat_n(1, p)
                .chain(std::iter::repeat_n(-1, q))
                .collect(),
        };
        Metric {
            p,
            q,
            variant,
            signs,
        }
    }

    /// Positive definite metric on `n` variables.
    pub fn euclidean(n: usize) -> Metric {
        Metric::new(n, 0, Variant::Minus)
    }

    pub fn n(&self) -> usize {
        self.p + self.q
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

    pub fn signs(&self) -> &[i64] {
        &self.signs
    }

    /// `ε_k` for 0-based coordinate `k`.
    pub fn sign(&self, k: usize) -> i64 {
        self.signs[k]
    }

    pub fn last_sign(&self) -> i64 {
        *self.signs.last().expect("nonempty metric")
    }

    /// The induced metric on the hyperplane `x_last = 0`.
    pub fn hyperplane(&self) -> Metric {
        let (p, q) = if self.last_sign() > 0 {
            (self.p - 1, self.q)
        } else {
            (self.p, self.q - 1)
        };
        Metric::new(p, q, self.variant)
    }

    fn check<C: Coeff>(&self, alpha: &Form<C>) -> Result<()> {
        if alpha.nvars() != self.n() {
            return Err(SboError::MetricDimensionMismatch {
                metric: self.n(),
                form: alpha.nvars(),
            });
        }
        Ok(())
    }

    /// Hodge star, normalized by `β ∧ *α = ⟨β, α⟩ dx_1 ∧ … ∧ dx_n`.
    pub fn star<C: Coeff>(&self, alpha: &Form<C>) -> Result<Form<C>> {
        self.check(alpha)?;
        let n = self.n();
        let mut out = Form::zero(n, n - alpha.degree());
        for (idx, c) in alpha.comps() {
            let comp = basis::complement(idx, n);
            let (_, perm) = basis::merge_sign(idx, &comp).expect("disjoint");
            let metric_sign: i64 = idx.iter().map(|&k| self.signs[k]).product();
            let c = if perm * metric_sign < 0 {
                c.negated()
            } else {
                c.clone()
            };
            out.add_component(comp, c);
        }
        Ok(out)
    }

    /// Sign of `**` on forms of degree `i`.
    pub fn star_star_sign(&self, i: usize) -> i64 {
        let e = i * (self.n() - i) + self.q;
        if e.is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Inverse of the Hodge star.
    pub fn star_inv<C: Coeff>(&self, beta: &Form<C>) -> Result<Form<C>> {
        let s = self.star(beta)?;
        Ok(if self.star_star_sign(beta.degree()) < 0 {
            s.neg()
        } else {
            s
        })
    }

    /// Codifferential `(−1)^i *^{−1} d *`; zero on functions.
    pub fn codifferential<C: Coeff>(&self, alpha: &Form<C>) -> Result<Form<C>> {
        self.check(alpha)?;
        let i = alpha.degree();
        if i == 0 {
            return Ok(Form::zero(alpha.nvars(), 0));
        }
        let r = self.star_inv(&self.star(alpha)?.d_or_zero())?;
        Ok(if i % 2 == 1 { r.neg() } else { r })
    }

    /// Pointwise pairing `⟨α, β⟩ = Σ_I ε_I α_I β_I`.
    pub fn inner<C: Coeff>(&self, alpha: &Form<C>, beta: &Form<C>) -> Result<C> {
        self.check(alpha)?;
        self.check(beta)?;
        let mut acc = C::zero_in(self.n());
        if alpha.degree() != beta.degree() {
            return Ok(acc);
        }
        for (idx, a) in alpha.comps() {
            if let Some(b) = beta.comps().get(idx) {
                let t = a.times(b);
                let s: i64 = idx.iter().map(|&k| self.signs[k]).product();
                acc = if s < 0 { acc.minus(&t) } else { acc.plus(&t) };
            }
        }
        Ok(acc)
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "R^({},{})_{}", self.p, self.q, self.variant)
    }
}
