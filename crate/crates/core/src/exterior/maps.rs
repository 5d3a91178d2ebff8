//! Rational maps between coordinate spaces and pullback of forms.

use crate::algebra::{MPoly, RatFunc};
use crate::error::{Result, SboError};

use super::{Form, RatForm};

/// `F = (F_1, …, F_m)` from `source_dim` to `target_dim` variables.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalMap {
    source_dim: usize,
    comps: Vec<RatFunc>,
}

impl RationalMap {
    pub fn new(source_dim: usize, comps: Vec<RatFunc>) -> Result<Self> {
        if let Some(bad) = comps.iter().find(|c| c.nvars() != source_dim) {
            return Err(SboError::DimensionMismatch {
                expected: source_dim,
                got: bad.nvars(),
            });
        }
        Ok(RationalMap { source_dim, comps })
    }

    pub fn from_polys(source_dim: usize, comps: Vec<MPoly>) -> Result<Self> {
        RationalMap::new(
            source_dim,
            comps.into_iter().map(RatFunc::from_poly).collect(),
        )
    }

    pub fn identity(n: usize) -> Self {
        RationalMap {
            source_dim: n,
            comps: (0..n)
                .map(|k| RatFunc::from_poly(MPoly::var(n, k)))
                .collect(),
        }
    }

    pub fn source_dim(&self) -> usize {
        self.source_dim
    }

    pub fn target_dim(&self) -> usize {
        self.comps.len()
    }

    pub fn comps(&self) -> &[RatFunc] {
        &self.comps
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &RationalMap) -> Result<RationalMap> {
        if inner.target_dim() != self.source_dim {
            return Err(SboError::DimensionMismatch {
                expected: self.source_dim,
                got: inner.target_dim(),
            });
        }
        let comps = self
            .comps
            .iter()
            .map(|c| c.compose(&inner.comps))
            .collect::<Result<Vec<_>>>()?;
        Ok(RationalMap {
            source_dim: inner.source_dim,
            comps,
        })
    }

    /// The differentials `dF_k` as 1-forms on the source.
    pub fn differentials(&self) -> Vec<RatForm> {
        self.comps
            .iter()
            .map(|f| Form::function(f.clone()).d_or_zero())
            .collect()
    }

    /// Pullback of a function on the target.
    pub fn pullback_fn(&self, f: &RatFunc) -> Result<RatFunc> {
        f.compose(&self.comps)
    }

    /// Pullback `F^*α`.
    pub fn pullback(&self, alpha: &RatForm) -> Result<RatForm> {
        if alpha.nvars() != self.target_dim() {
            return Err(SboError::DimensionMismatch {
                expected: self.target_dim(),
                got: alpha.nvars(),
            });
        }
        let dfs = self.differentials();
        let mut out = Form::zero(self.source_dim, alpha.degree());
        for (idx, c) in alpha.comps() {
            let mut term = Form::function(self.pullback_fn(c)?);
            for &k in idx {
                term = term.wedge(&dfs[k]);
            }
            if term.degree() == out.degree() {
                out = out.add(&term);
            }
        }
        Ok(out)
    }
}
