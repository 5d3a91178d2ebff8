//! The operator families `D^{i→j}_{u,ℓ}` on `R^{p,q}_±`, their Hodge
//! duals, and the four first-order operators `A, B, C, D` in dimension 4.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::Serialize;

use crate::algebra::{ParamScalar, Scalar};
use crate::error::{Result, SboError};
use crate::exterior::{Metric, Variant};
use crate::juhl::{gamma_factor, scalar_juhl};

use super::builders::{codifferential, ext_d, normal_interior, star};
use super::FormOperator;

/// Which family an operator belongs to, by the degree shift `j − i`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize)]
pub enum Family {
    /// `i → i − 1`
    Lower,
    /// `i → i`
    Same,
    /// `i → i − 2`, only at special parameters
    LowerTwo,
    /// `i → i + 1`, only at special parameters
    Raise,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::Lower, Family::Same, Family::LowerTwo, Family::Raise];

    /// `j − i`.
    pub fn shift(self) -> i64 {
        match self {
            Family::Lower => -1,
            Family::Same => 0,
            Family::LowerTwo => -2,
            Family::Raise => 1,
        }
    }

    pub fn from_shift(shift: i64) -> Option<Family> {
        Family::ALL.into_iter().find(|f| f.shift() == shift)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Family::Lower => "i->i-1",
            Family::Same => "i->i",
            Family::LowerTwo => "i->i-2",
            Family::Raise => "i->i+1",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Family {
    type Err = SboError;
    fn from_str(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let t = t.replace('→', "->").replace('−', "-");
        Family::ALL
            .into_iter()
            .find(|f| f.as_str() == t)
            .ok_or_else(|| {
                SboError::Parse(format!(
                    "unknown family {s:?} (expected i->i-1, i->i, i->i-2 or i->i+1)"
                ))
            })
    }
}

/// Parameters of one family member.
#[derive(Clone, Debug, PartialEq)]
pub struct SboSpec {
    pub variant: Variant,
    pub p: usize,
    pub q: usize,
    pub i: usize,
    pub family: Family,
    /// The source weight; `ParamScalar::u()` keeps it symbolic.
    pub u: ParamScalar,
    pub ell: usize,
}

impl SboSpec {
    pub fn new(
        variant: Variant,
        p: usize,
        q: usize,
        i: usize,
        family: Family,
        u: ParamScalar,
        ell: usize,
    ) -> Self {
        SboSpec {
            variant,
            p,
            q,
            i,
            family,
            u,
            ell,
        }
    }

    pub fn n(&self) -> usize {
        self.p + self.q
    }

    pub fn metric(&self) -> Metric {
        Metric::new(self.p, self.q, self.variant)
    }

    /// Target degree (may be negative for malformed specs).
    pub fn j(&self) -> i64 {
        self.i as i64 + self.family.shift()
    }

    /// `μ = u + i − (n − 1)/2`.
    pub fn mu(&self) -> ParamScalar {
        &self.u + &ParamScalar::frac(2 * self.i as i64 - (self.n() as i64 - 1), 2)
    }

    /// Target weight `v` from `ℓ = (v + j) − (u + i)`.
    pub fn v(&self) -> ParamScalar {
        &self.u + &ParamScalar::from_int(self.ell as i64 - self.family.shift())
    }

    fn u_equals(&self, value: i64) -> bool {
        self.u == ParamScalar::from_int(value)
    }

    /// Checks the family-specific parameter constraints.
    pub fn check(&self) -> Result<()> {
        let n = self.n();
        let i = self.i;
        let bad = |msg: String| Err(SboError::InadmissibleSpec(msg));
        if n < 2 {
            return bad(format!("need n = p + q ≥ 2, got {n}"));
        }
        match self.variant {
            Variant::Plus if self.p == 0 => {
                return bad("variant plus needs p ≥ 1 (positive normal direction)".into())
            }
            Variant::Minus if self.q == 0 => {
                return bad("variant minus needs q ≥ 1 (negative normal direction)".into())
            }
            _ => {}
        }
        if i > n {
            return bad(format!("form degree i = {i} exceeds n = {n}"));
        }
        let (ni, ell) = (n as i64, self.ell as i64);
        match self.family {
            Family::Lower => {
                if i == 0 {
                    return bad("family i->i-1 requires i ≥ 1".into());
                }
            }
            Family::Same => {
                if i + 1 > n {
                    return bad(format!("family i->i requires i ≤ n-1 = {}", n - 1));
                }
            }
            Family::LowerTwo => {
                let generic =
                    (2..n).contains(&i) && self.ell == 1 && self.u_equals(ni - 2 * i as i64);
                let top = i == n && self.ell >= 1 && self.u_equals(1 - ni - ell);
                if !(generic || top) {
                    return bad(format!(
                        "family i->i-2 requires u=n-2i, ℓ=1 with 2 ≤ i ≤ n-1, or i=n with u=1-n-ℓ, ℓ ≥ 1 (got i={i}, u={}, ℓ={})",
                        self.u, self.ell
                    ));
                }
            }
            Family::Raise => {
                let generic =
                    (1..=n.saturating_sub(2)).contains(&i) && self.ell == 1 && self.u_equals(0);
                let bottom = i == 0 && self.ell >= 1 && self.u_equals(1 - ell);
                if !(generic || bottom) {
                    return bad(format!(
                        "family i->i+1 requires u=0, ℓ=1 with 1 ≤ i ≤ n-2, or i=0 with u=1-ℓ, ℓ ≥ 1 (got i={i}, u={}, ℓ={})",
                        self.u, self.ell
                    ));
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for SboSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "D^({}->{})_(u={}, ell={}) on R^({},{})_{}",
            self.i,
            self.j(),
            self.u,
            self.ell,
            self.p,
            self.q,
            self.variant
        )
    }
}

/// `D^μ_ℓ` acting diagonally on `deg`-forms; zero for `ℓ < 0`.
fn juhl(g: &Metric, mu: &ParamScalar, ell: i64, deg: usize) -> FormOperator {
    FormOperator::from_symbol(g.n(), deg, scalar_juhl(g, mu, ell).symbol())
}

fn sum(terms: Vec<FormOperator>) -> Result<FormOperator> {
    let mut it = terms.into_iter();
    let first = it.next().expect("at least one term");
    it.try_fold(first, |acc, t| acc.add(&t))
}

/// Builds the expanded operator for an admissible spec.
pub fn build_sbo(spec: &SboSpec) -> Result<FormOperator> {
    spec.check()?;
    let g = spec.metric();
    let n = g.n();
    let i = spec.i;
    let ell = spec.ell as i64;
    let mu = spec.mu();
    let mu1 = &mu + &ParamScalar::from_int(1);
    // the "+" display is the "−" one with d* replaced by −d*
    let flip = if spec.variant == Variant::Plus { -1 } else { 1 };
    let sgn = |k: i64| ParamScalar::from_int(k);
    let j = spec.j() as usize;
    let inner = match spec.family {
        Family::Lower => {
            let iota = normal_interior(n, i)?;
            let mut terms = Vec::new();
            if i >= 2 {
                let dd_iota = ext_d(n, i - 2)?
                    .compose(&codifferential(&g, i - 1)?)?
                    .compose(&iota)?;
                terms.push(
                    juhl(&g, &mu1, ell - 2, i - 1)
                        .compose(&dd_iota)?
                        .scale(&sgn(flip)),
                );
            }
            let gamma = gamma_factor(&mu, ell);
            terms.push(
                juhl(&g, &mu1, ell - 1, i - 1)
                    .compose(&codifferential(&g, i)?)?
                    .scale(&gamma.scale(&Scalar::from_int(flip))),
            );
            let c =
                ParamScalar::frac(2 * i as i64 - n as i64, 2) + spec.u.scale(&Scalar::frac(1, 2));
            terms.push(juhl(&g, &mu, ell, i - 1).compose(&iota)?.scale(&c));
            sum(terms)?
        }
        Family::Same => {
            let mut terms = Vec::new();
            if i >= 1 {
                let dd = ext_d(n, i - 1)?.compose(&codifferential(&g, i)?)?;
                terms.push(juhl(&g, &mu1, ell - 2, i).compose(&dd)?.scale(&sgn(-flip)));
                let d_iota = ext_d(n, i - 1)?.compose(&normal_interior(n, i)?)?;
                let half = &mu - &ParamScalar::frac(1, 2);
                let gamma = gamma_factor(&half, ell);
                terms.push(juhl(&g, &mu, ell - 1, i).compose(&d_iota)?.scale(&-gamma));
            }
            let c = (&spec.u + &ParamScalar::from_int(ell)).scale(&Scalar::frac(1, 2));
            terms.push(juhl(&g, &mu, ell, i).scale(&c));
            sum(terms)?
        }
        Family::LowerTwo => {
            let iota_dstar = normal_interior(n, i - 1)?.compose(&codifferential(&g, i)?)?;
            let body = if i == n {
                juhl(&g, &mu, ell - 1, i - 2).compose(&iota_dstar)?
            } else {
                iota_dstar
            };
            body.scale(&sgn(-flip))
        }
        Family::Raise => {
            let d = ext_d(n, i)?;
            if i == 0 {
                juhl(&g, &mu, ell - 1, 1).compose(&d)?
            } else {
                d
            }
        }
    };
    FormOperator::restriction(n, j).compose(&inner)
}

/// Post-composes a restricting operator with the Hodge star of the
/// hyperplane metric `h`.
pub fn hodge_compose(h: &Metric, op: &FormOperator) -> Result<FormOperator> {
    if !op.is_restricted() || h.n() != op.dst_vars() {
        return Err(SboError::ShapeMismatch(format!(
            "hodge_compose needs a restricting operator onto R^{}, got {}",
            h.n(),
            op.shape()
        )));
    }
    star(h, op.dst_degree())?.compose(op)
}

/// The four first-order operators `A = Rest∘d`, `B = Rest∘d*`,
/// `C = Rest∘ι∘d`, `D = Rest∘ι∘d*`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize)]
pub enum Abcd {
    A,
    B,
    C,
    D,
}

impl fmt::Display for Abcd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// One of `A, B, C, D` on `i`-forms for the metric `g`.
pub fn build_abcd(which: Abcd, g: &Metric, i: usize) -> Result<FormOperator> {
    let n = g.n();
    let inner = match which {
        Abcd::A => ext_d(n, i)?,
        Abcd::B => codifferential(g, i)?,
        Abcd::C => normal_interior(n, i + 1)?.compose(&ext_d(n, i)?)?,
        Abcd::D => {
            if i < 1 {
                return Err(SboError::ShapeMismatch("D needs i ≥ 1".into()));
            }
            normal_interior(n, i - 1)?.compose(&codifferential(g, i)?)?
        }
    };
    FormOperator::restriction(n, inner.dst_degree()).compose(&inner)
}

/// A sign relating two operators in the duality `X ∘ *_{R^{p,q}} = s · *_{R^{p−1,q}} ∘ Y`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HodgeSign {
    /// `"D*=s*A"` or `"C*=s*B"`.
    pub relation: String,
    /// Degree of the forms `Y` acts on.
    pub i: usize,
    pub sign: i64,
}

fn sign_between(lhs: &FormOperator, rhs: &FormOperator, what: &str) -> Result<i64> {
    if lhs.is_zero() && rhs.is_zero() {
        return Err(SboError::SignUndetermined(format!(
            "{what}: both sides vanish"
        )));
    }
    if lhs == rhs {
        Ok(1)
    } else if *lhs == rhs.neg() {
        Ok(-1)
    } else {
        Err(SboError::SignUndetermined(what.to_string()))
    }
}

/// Determines the signs in `D ∘ * = s · * ∘ A` (for `A` on `i`-forms,
/// `0 ≤ i ≤ n−2`) and `C ∘ * = s' · * ∘ B` (for `B` on `i`-forms,
/// `1 ≤ i ≤ n`) by exact comparison.
pub fn hodge_signs(g: &Metric) -> Result<Vec<HodgeSign>> {
    let n = g.n();
    let h = g.hyperplane();
    let mut out = Vec::new();
    for i in 0..=n - 2 {
        let lhs = build_abcd(Abcd::D, g, n - i)?.compose(&star(g, i)?)?;
        let rhs = hodge_compose(&h, &build_abcd(Abcd::A, g, i)?)?;
        let sign = sign_between(&lhs, &rhs, &format!("D*=s*A at i={i} on {g}"))?;
        out.push(HodgeSign {
            relation: "D*=s*A".into(),
            i,
            sign,
        });
    }
    for i in 1..=n {
        let lhs = build_abcd(Abcd::C, g, n - i)?.compose(&star(g, i)?)?;
        let rhs = hodge_compose(&h, &build_abcd(Abcd::B, g, i)?)?;
        let sign = sign_between(&lhs, &rhs, &format!("C*=s*B at i={i} on {g}"))?;
        out.push(HodgeSign {
            relation: "C*=s*B".into(),
            i,
            sign,
        });
    }
    Ok(out)
}

impl SboSpec {
    /// True if the operator built from this spec vanishes identically (a
    /// renormalization point of the family).
    pub fn vanishes(&self) -> Result<bool> {
        Ok(build_sbo(self)?.is_zero())
    }

    /// Weight difference `v − u` as a scalar when `u` is numeric.
    pub fn weight_gap(&self) -> Option<Scalar> {
        (&self.v() - &self.u)
            .as_constant()
            .filter(|s| !s.is_zero() || true)
    }
}
