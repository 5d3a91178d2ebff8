//! Polynomial vector fields.

use std::fmt;

use crate::algebra::MPoly;
use crate::error::{Result, SboError};

use super::{Coeff, Form};

/// `Σ_k Z_k ∂_k` with polynomial components.
#[derive(Clone, PartialEq, Debug)]
pub struct VectorField {
    comps: Vec<MPoly>,
}

impl VectorField {
    pub fn new(comps: Vec<MPoly>) -> Result<Self> {
        let n = comps.len();
        if let Some(bad) = comps.iter().find(|c| c.nvars() != n) {
            return Err(SboError::DimensionMismatch {
                expected: n,
                got: bad.nvars(),
            });
        }
        Ok(VectorField { comps })
    }

    /// The coordinate field `∂_k` on `n` variables.
    pub fn coordinate(n: usize, k: usize) -> Self {
        let mut comps = vec![MPoly::zero(n); n];
        comps[k] = MPoly::one(n);
        VectorField { comps }
    }

    pub fn zero(n: usize) -> Self {
        VectorField {
            comps: vec![MPoly::zero(n); n],
        }
    }

    pub fn nvars(&self) -> usize {
        self.comps.len()
    }

    pub fn comps(&self) -> &[MPoly] {
        &self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(MPoly::is_zero)
    }

    pub fn add(&self, rhs: &VectorField) -> VectorField {
        VectorField {
            comps: self
                .comps
                .iter()
                .zip(&rhs.comps)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn scale(&self, c: &crate::algebra::Scalar) -> VectorField {
        VectorField {
            comps: self.comps.iter().map(|a| a.scale_scalar(c)).collect(),
        }
    }

    /// Directional derivative `Z f`.
    pub fn apply<C: Coeff>(&self, f: &C) -> C {
        let mut acc = C::zero_in(f.nvars());
        for (k, zk) in self.comps.iter().enumerate() {
            if zk.is_zero() {
                continue;
            }
            let df = f.partial(k);
            if !df.is_zero() {
                acc = acc.plus(&df.times(&C::from_poly(zk.clone())));
            }
        }
        acc
    }

    /// Commutator `[Z, W]` acting on functions as `ZW − WZ`.
    pub fn bracket(&self, rhs: &VectorField) -> Result<VectorField> {
        if self.nvars() != rhs.nvars() {
            return Err(SboError::DimensionMismatch {
                expected: self.nvars(),
                got: rhs.nvars(),
            });
        }
        Ok(VectorField {
            comps: (0..self.nvars())
                .map(|k| &self.apply(&rhs.comps[k]) - &rhs.apply(&self.comps[k]))
                .collect(),
        })
    }

    /// Contraction `ι_Z α`.
    pub fn interior<C: Coeff>(&self, alpha: &Form<C>) -> Result<Form<C>> {
        self.check(alpha.nvars())?;
        let v: Vec<C> = self.comps.iter().map(|c| C::from_poly(c.clone())).collect();
        Ok(alpha.interior_by(&v))
    }

    /// Lie derivative by the Cartan formula `L_Z = d ι_Z + ι_Z d`.
    pub fn lie_derivative<C: Coeff>(&self, alpha: &Form<C>) -> Result<Form<C>> {
        self.check(alpha.nvars())?;
        let v: Vec<C> = self.comps.iter().map(|c| C::from_poly(c.clone())).collect();
        if alpha.degree() == 0 {
            return Ok(Form::function(self.apply(&alpha.component(&[]))));
        }
        let first = alpha.interior_by(&v).d_or_zero();
        if alpha.degree() == alpha.nvars() {
            return Ok(first);
        }
        Ok(first.add(&alpha.d_or_zero().interior_by(&v)))
    }

    /// Restriction of the components to `x_last = 0`, dropping the last
    /// component (which must vanish there for tangential fields).
    pub fn restrict(&self) -> VectorField {
        let n = self.nvars();
        VectorField {
            comps: self.comps[..n - 1]
                .iter()
                .map(MPoly::restrict_last)
                .collect(),
        }
    }

    fn check(&self, n: usize) -> Result<()> {
        if n != self.nvars() {
            return Err(SboError::DimensionMismatch {
                expected: self.nvars(),
                got: n,
            });
        }
        Ok(())
    }
}

impl fmt::Display for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .comps
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| format!("({c})*d/dx{}", k + 1))
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}
