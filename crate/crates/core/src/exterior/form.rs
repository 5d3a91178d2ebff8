//! Differential forms of fixed degree with function coefficients.

use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::{MPoly, ParamScalar, RatFunc, Scalar};
use crate::error::{Result, SboError};

use super::basis::{self, Index};
use super::Coeff;

/// A homogeneous differential form `Σ_I c_I dx_I` on `nvars` variables.
/// Zero components are never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct Form<C> {
    degree: usize,
    nvars: usize,
    comps: BTreeMap<Index, C>,
}

/// A form with polynomial coefficients.
pub type PolyForm = Form<MPoly>;
/// A form with rational-function coefficients.
pub type RatForm = Form<RatFunc>;

impl<C: Coeff> Form<C> {
    pub fn zero(nvars: usize, degree: usize) -> Self {
        Form {
            degree,
            nvars,
            comps: BTreeMap::new(),
        }
    }

    /// A 0-form.
    pub fn function(f: C) -> Self {
        let mut out = Form::zero(f.nvars(), 0);
        out.add_component(Vec::new(), f);
        out
    }

    /// The basis form `dx_I` with coefficient 1.
    pub fn basis_form(nvars: usize, idx: Index) -> Self {
        let mut out = Form::zero(nvars, idx.len());
        out.add_component(idx, C::one_in(nvars));
        out
    }

    /// Builds a form from components; panics on malformed index tuples.
    pub fn from_comps(
        nvars: usize,
        degree: usize,
        comps: impl IntoIterator<Item = (Index, C)>,
    ) -> Self {
        let mut out = Form::zero(nvars, degree);
        for (idx, c) in comps {
            out.add_component(idx, c);
        }
        out
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn comps(&self) -> &BTreeMap<Index, C> {
        &self.comps
    }

    pub fn component(&self, idx: &[usize]) -> C {
        self.comps
            .get(idx)
            .cloned()
            .unwrap_or_else(|| C::zero_in(self.nvars))
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    /// Adds `c · dx_idx`.
    pub fn add_component(&mut self, idx: Index, c: C) {
        assert_eq!(idx.len(), self.degree, "index length must equal the degree");
        assert!(
            idx.windows(2).all(|w| w[0] < w[1]),
            "index must be increasing"
        );
        assert!(idx.iter().all(|&k| k < self.nvars), "index out of range");
        assert_eq!(c.nvars(), self.nvars, "coefficient variable count");
        if c.is_zero() {
            return;
        }
        match self.comps.get_mut(&idx) {
            Some(old) => {
                let s = old.plus(&c);
                if s.is_zero() {
                    self.comps.remove(&idx);
                } else {
                    *old = s;
                }
            }
            None => {
                self.comps.insert(idx, c);
            }
        }
    }

    fn add_signed(&mut self, idx: Index, c: &C, sign: i64) {
        if sign < 0 {
            self.add_component(idx, c.negated());
        } else {
            self.add_component(idx, c.clone());
        }
    }

    fn check_shape(&self, rhs: &Form<C>) {
        assert_eq!(self.nvars, rhs.nvars, "forms live on different spaces");
        assert_eq!(self.degree, rhs.degree, "forms have different degrees");
    }

    pub fn add(&self, rhs: &Form<C>) -> Form<C> {
        self.check_shape(rhs);
        let mut out = self.clone();
        for (idx, c) in &rhs.comps {
            out.add_component(idx.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Form<C>) -> Form<C> {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Form<C> {
        self.map(|c| c.negated())
    }

    pub fn scale(&self, s: &ParamScalar) -> Form<C> {
        self.map(|c| c.scaled(s))
    }

    pub fn scale_scalar(&self, s: &Scalar) -> Form<C> {
        self.scale(&ParamScalar::constant(s.clone()))
    }

    /// Multiplies every component by the function `f`.
    pub fn mul_fn(&self, f: &C) -> Form<C> {
        self.map(|c| c.times(f))
    }

    /// Applies `f` to every coefficient, dropping zeros.
    pub fn map(&self, f: impl Fn(&C) -> C) -> Form<C> {
        Form {
            degree: self.degree,
            nvars: self.nvars,
            comps: self
                .comps
                .iter()
                .map(|(k, c)| (k.clone(), f(c)))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }

    pub fn wedge(&self, rhs: &Form<C>) -> Form<C> {
        assert_eq!(self.nvars, rhs.nvars, "forms live on different spaces");
        let mut out = Form::zero(self.nvars, self.degree + rhs.degree);
        if out.degree > self.nvars {
            return out;
        }
        for (a, ca) in &self.comps {
            for (b, cb) in &rhs.comps {
                if let Some((idx, sign)) = basis::merge_sign(a, b) {
                    out.add_signed(idx, &ca.times(cb), sign);
                }
            }
        }
        out
    }

    /// Exterior derivative. Fails on top-degree forms.
    pub fn d(&self) -> Result<Form<C>> {
        if self.degree >= self.nvars {
            return Err(SboError::DegreeOverflow {
                degree: self.degree,
            });
        }
        Ok(self.d_or_zero())
    }

    /// Exterior derivative, returning the zero form of degree `nvars + 1`
    /// on top-degree input.
    pub(crate) fn d_or_zero(&self) -> Form<C> {
        let mut out = Form::zero(self.nvars, self.degree + 1);
        for (idx, c) in &self.comps {
            for k in 0..self.nvars {
                if let Some((new, sign)) = basis::insert_sign(k, idx) {
                    let dc = c.partial(k);
                    if !dc.is_zero() {
                        out.add_signed(new, &dc, sign);
                    }
                }
            }
        }
        out
    }

    /// Partial derivative of every coefficient.
    pub fn partial(&self, var: usize) -> Form<C> {
        self.map(|c| c.partial(var))
    }

    /// Contraction with the coordinate field `∂_k`. 0-forms map to zero.
    pub fn interior(&self, k: usize) -> Form<C> {
        assert!(k < self.nvars, "direction out of range");
        if self.degree == 0 {
            return Form::zero(self.nvars, 0);
        }
        let mut out = Form::zero(self.nvars, self.degree - 1);
        for (idx, c) in &self.comps {
            if let Some((new, sign)) = basis::remove_sign(k, idx) {
                out.add_signed(new, c, sign);
            }
        }
        out
    }

    /// Contraction with the vector field `Σ_k v_k ∂_k`.
    pub fn interior_by(&self, v: &[C]) -> Form<C> {
        assert_eq!(v.len(), self.nvars, "vector field dimension");
        let mut out = Form::zero(self.nvars, self.degree.saturating_sub(1));
        for (k, vk) in v.iter().enumerate() {
            if !vk.is_zero() {
                out = out.add(&self.interior(k).mul_fn(vk));
            }
        }
        out
    }

    /// Restriction to the hyperplane `x_last = 0`: sets the last variable
    /// to zero and drops every component containing `dx_last`.
    pub fn restrict(&self) -> Result<Form<C>> {
        assert!(self.nvars > 0);
        let last = self.nvars - 1;
        let mut out = Form::zero(last, self.degree);
        for (idx, c) in &self.comps {
            if idx.contains(&last) {
                continue;
            }
            out.add_component(idx.clone(), c.restricted()?);
        }
        Ok(out)
    }
}

impl PolyForm {
    /// Substitutes `u = u0` in every coefficient.
    pub fn specialize(&self, u0: &Scalar) -> PolyForm {
        self.map(|c| c.specialize(u0))
    }

    pub fn to_rat(&self) -> RatForm {
        Form {
            degree: self.degree,
            nvars: self.nvars,
            comps: self
                .comps
                .iter()
                .map(|(k, c)| (k.clone(), RatFunc::from_poly(c.clone())))
                .collect(),
        }
    }

    /// Maximum polynomial degree over all components.
    pub fn poly_degree(&self) -> u32 {
        self.comps
            .values()
            .filter_map(MPoly::degree)
            .max()
            .unwrap_or(0)
    }
}

impl RatForm {
    /// Converts back to polynomial coefficients when every denominator is
    /// a constant.
    pub fn to_poly(&self) -> Option<PolyForm> {
        let mut out = PolyForm::zero(self.nvars, self.degree);
        for (idx, c) in &self.comps {
            let r = c.reduced();
            let den = r.den().as_constant_scalar()?;
            out.add_component(idx.clone(), r.num().scale_scalar(&den.inv().ok()?));
        }
        Some(out)
    }
}

impl<C: Coeff> fmt::Display for Form<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.comps.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .comps
            .iter()
            .map(|(idx, c)| {
                if idx.is_empty() {
                    format!("({c})")
                } else {
                    let dx: Vec<String> = idx.iter().map(|k| format!("dx{}", k + 1)).collect();
                    format!("({c})*{}", dx.join("^"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
