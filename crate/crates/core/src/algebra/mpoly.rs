//! Sparse multivariate polynomials over [`ParamScalar`].

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{ParamScalar, Scalar};
use crate::error::{Result, SboError};

/// Maximum number of variables a [`Monomial`] can hold.
pub const MAX_VARS: usize = 8;

/// An exponent vector packed one byte per variable, variable 0 in the most
/// significant byte. Ordering is graded lexicographic with `x1 > x2 > …`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Monomial {
    degree: u16,
    packed: u64,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        assert!(exps.len() <= MAX_VARS, "too many variables");
        let mut m = Monomial::one();
        for (k, &e) in exps.iter().enumerate() {
            m.set(k, e);
        }
        m
    }

    /// `x_k`.
    pub fn var(k: usize) -> Self {
        let mut m = Monomial::one();
        m.set(k, 1);
        m
    }

    pub fn exp(&self, k: usize) -> u32 {
        ((self.packed >> (8 * (MAX_VARS - 1 - k))) & 0xff) as u32
    }

    fn set(&mut self, k: usize, e: u32) {
        assert!(e < 256, "exponent overflow");
        let shift = 8 * (MAX_VARS - 1 - k);
        let old = self.exp(k);
        self.packed = (self.packed & !(0xffu64 << shift)) | ((e as u64) << shift);
        self.degree = self.degree - old as u16 + e as u16;
    }

    pub fn degree(&self) -> u32 {
        self.degree as u32
    }

    pub fn exponents(&self, nvars: usize) -> Vec<u32> {
        (0..nvars).map(|k| self.exp(k)).collect()
    }

    pub fn mul(&self, rhs: &Monomial) -> Monomial {
        let mut m = *self;
        for k in 0..MAX_VARS {
            let e = rhs.exp(k);
            if e > 0 {
                m.set(k, m.exp(k) + e);
            }
        }
        m
    }

    pub fn pow(&self, e: u32) -> Monomial {
        (0..e).fold(Monomial::one(), |acc, _| acc.mul(self))
    }

    /// `self / rhs` when `rhs` divides `self`.
    pub fn div(&self, rhs: &Monomial) -> Option<Monomial> {
        let mut m = *self;
        for k in 0..MAX_VARS {
            let (a, b) = (self.exp(k), rhs.exp(k));
            if b > a {
                return None;
            }
            if b > 0 {
                m.set(k, a - b);
            }
        }
        Some(m)
    }

    pub(crate) fn with_exp(&self, k: usize, e: u32) -> Monomial {
        let mut m = *self;
        m.set(k, e);
        m
    }

    /// Drops variable `k`, shifting later variables down.
    fn remove_var(&self, k: usize, nvars: usize) -> Monomial {
        let mut exps = self.exponents(nvars);
        exps.remove(k);
        Monomial::from_exponents(&exps)
    }
}

/// A polynomial in `nvars` variables whose coefficients are polynomials in
/// the spectral parameter. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, ParamScalar>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        assert!(nvars <= MAX_VARS, "too many variables");
        MPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: ParamScalar) -> Self {
        let mut p = MPoly::zero(nvars);
        p.add_term(Monomial::one(), c);
        p
    }

    pub fn from_scalar(nvars: usize, c: Scalar) -> Self {
        MPoly::constant(nvars, ParamScalar::constant(c))
    }

    pub fn from_int(nvars: usize, c: i64) -> Self {
        MPoly::from_scalar(nvars, Scalar::from_int(c))
    }

    pub fn one(nvars: usize) -> Self {
        MPoly::constant(nvars, ParamScalar::one())
    }

    /// The coordinate function `x_k` (0-based).
    pub fn var(nvars: usize, k: usize) -> Self {
        assert!(k < nvars);
        let mut p = MPoly::zero(nvars);
        p.add_term(Monomial::var(k), ParamScalar::one());
        p
    }

    pub fn monomial(nvars: usize, m: Monomial, c: ParamScalar) -> Self {
        let mut p = MPoly::zero(nvars);
        p.add_term(m, c);
        p
    }

    pub fn from_terms(
        nvars: usize,
        terms: impl IntoIterator<Item = (Monomial, ParamScalar)>,
    ) -> Self {
        let mut p = MPoly::zero(nvars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &ParamScalar)> {
        self.terms.iter()
    }

    pub fn nterms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    pub fn constant_term(&self) -> ParamScalar {
        self.terms
            .get(&Monomial::one())
            .cloned()
            .unwrap_or_else(ParamScalar::zero)
    }

    /// The value of a constant, `u`-free polynomial.
    pub fn as_constant_scalar(&self) -> Option<Scalar> {
        if self.is_constant() {
            self.constant_term().as_constant()
        } else {
            None
        }
    }

    pub fn coeff(&self, m: &Monomial) -> ParamScalar {
        self.terms.get(m).cloned().unwrap_or_else(ParamScalar::zero)
    }

    /// Total degree; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(|m| m.degree())
    }

    pub fn degree_in(&self, k: usize) -> u32 {
        self.terms.keys().map(|m| m.exp(k)).max().unwrap_or(0)
    }

    /// Leading term in graded-lex order.
    pub fn leading(&self) -> Option<(&Monomial, &ParamScalar)> {
        self.terms.iter().next_back()
    }

    /// Maximal degree in `u` across coefficients.
    pub fn param_degree(&self) -> usize {
        self.terms
            .values()
            .filter_map(|c| c.degree())
            .max()
            .unwrap_or(0)
    }

    /// True if no coefficient depends on `u`.
    pub fn is_param_free(&self) -> bool {
        self.terms.values().all(|c| c.is_constant())
    }

    pub fn add_term(&mut self, m: Monomial, c: ParamScalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add_assign_ref(&mut self, rhs: &MPoly) {
        assert_eq!(self.nvars, rhs.nvars, "nvars mismatch");
        for (m, c) in &rhs.terms {
            self.add_term(*m, c.clone());
        }
    }

    /// `self += c * rhs`.
    pub fn add_scaled(&mut self, rhs: &MPoly, c: &ParamScalar) {
        assert_eq!(self.nvars, rhs.nvars, "nvars mismatch");
        if c.is_zero() {
            return;
        }
        for (m, d) in &rhs.terms {
            self.add_term(*m, d * c);
        }
    }

    pub fn scale(&self, c: &ParamScalar) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(self.nvars);
        }
        MPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, d)| (*m, d * c))
                .filter(|(_, d)| !d.is_zero())
                .collect(),
        }
    }

    pub fn scale_scalar(&self, c: &Scalar) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(self.nvars);
        }
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, d)| (*m, d.scale(c))).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> MPoly {
        MPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.mul(m), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> MPoly {
        let mut acc = MPoly::one(self.nvars);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Exact partial derivative in variable `var`.
    pub fn diff(&self, var: usize) -> Result<MPoly> {
        if var >= self.nvars {
            return Err(SboError::IndexOutOfRange {
                index: var,
                nvars: self.nvars,
            });
        }
        Ok(self.diff_unchecked(var))
    }

    pub(crate) fn diff_unchecked(&self, var: usize) -> MPoly {
        let mut out = MPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.exp(var);
            if e == 0 {
                continue;
            }
            out.add_term(m.with_exp(var, e - 1), c.scale(&Scalar::from_int(e as i64)));
        }
        out
    }

    /// Applies the multi-index derivative `∂^alpha`.
    pub fn diff_multi(&self, alpha: &[u32]) -> MPoly {
        let mut p = self.clone();
        for (k, &a) in alpha.iter().enumerate() {
            for _ in 0..a {
                if p.is_zero() {
                    return p;
                }
                p = p.diff_unchecked(k);
            }
        }
        p
    }

    /// Sets variable `var` to the scalar `value`, keeping the variable count.
    pub fn subs_scalar(&self, var: usize, value: &Scalar) -> MPoly {
        let mut out = MPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.exp(var);
            out.add_term(m.with_exp(var, 0), c.scale(&value.pow(e)));
        }
        out
    }

    /// Restriction to the hyperplane `x_last = 0`, as a polynomial in one
    /// fewer variable.
    pub fn restrict_last(&self) -> MPoly {
        assert!(self.nvars > 0);
        let last = self.nvars - 1;
        MPoly {
            nvars: last,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.exp(last) == 0)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// Reinterprets the polynomial in `nvars` variables (`nvars` must be at
    /// least the current count; extra variables do not occur).
    pub fn extend_vars(&self, nvars: usize) -> MPoly {
        assert!(nvars >= self.nvars && nvars <= MAX_VARS);
        MPoly {
            nvars,
            terms: self.terms.clone(),
        }
    }

    /// Drops variable `k` (which must not occur).
    pub fn remove_var(&self, k: usize) -> MPoly {
        assert!(self.degree_in(k) == 0, "variable occurs");
        MPoly::from_terms(
            self.nvars - 1,
            self.terms
                .iter()
                .map(|(m, c)| (m.remove_var(k, self.nvars), c.clone())),
        )
    }

    /// Renames variables: variable `k` of `self` becomes variable `perm[k]`
    /// of the result, which has `nvars` variables.
    pub fn permute_vars(&self, perm: &[usize], nvars: usize) -> MPoly {
        assert_eq!(perm.len(), self.nvars);
        MPoly::from_terms(
            nvars,
            self.terms.iter().map(|(m, c)| {
                let mut out = vec![0; nvars];
                for (k, &p) in perm.iter().enumerate() {
                    out[p] += m.exp(k);
                }
                (Monomial::from_exponents(&out), c.clone())
            }),
        )
    }

    /// Substitutes `u = u0` in every coefficient.
    pub fn specialize(&self, u0: &Scalar) -> MPoly {
        MPoly::from_terms(
            self.nvars,
            self.terms
                .iter()
                .map(|(m, c)| (*m, ParamScalar::constant(c.eval(u0)))),
        )
    }

    /// Applies `f` to every coefficient.
    pub fn map_coeffs(&self, f: impl Fn(&ParamScalar) -> ParamScalar) -> MPoly {
        MPoly::from_terms(self.nvars, self.terms.iter().map(|(m, c)| (*m, f(c))))
    }

    /// Evaluates at a point; `u` stays symbolic.
    pub fn eval(&self, point: &[Scalar]) -> ParamScalar {
        assert_eq!(point.len(), self.nvars);
        let mut acc = ParamScalar::zero();
        for (m, c) in &self.terms {
            let mut v = Scalar::one();
            for (k, x) in point.iter().enumerate() {
                v = &v * &x.pow(m.exp(k));
            }
            acc = &acc + &c.scale(&v);
        }
        acc
    }

    /// Renders with the given variable names.
    pub fn render(&self, names: &[&str]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        let only_constant = self.terms.len() == 1 && self.is_constant();
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let mono: Vec<String> = (0..self.nvars)
                .filter(|&k| m.exp(k) > 0)
                .map(|k| {
                    let name = names
                        .get(k)
                        .map(|s| s.to_string())
                        .unwrap_or_else(|| format!("x{}", k + 1));
                    match m.exp(k) {
                        1 => name,
                        e => format!("{name}^{e}"),
                    }
                })
                .collect();
            let mono = mono.join("*");
            let (neg, mag) = if c.is_negative_constant() {
                (true, -c)
            } else {
                (false, c.clone())
            };
            let coef = if mag.is_compound() && !only_constant {
                format!("({mag})")
            } else {
                mag.to_string()
            };
            let body = if mono.is_empty() {
                coef
            } else if mag.is_one() {
                mono
            } else {
                format!("{coef}*{mono}")
            };
            match (idx == 0, neg) {
                (true, true) => out.push('-'),
                (true, false) => {}
                (false, true) => out.push_str(" - "),
                (false, false) => out.push_str(" + "),
            }
            out.push_str(&body);
        }
        out
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(&[]))
    }
}

impl<'a> Add<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        let mut out = self.clone();
        out.add_assign_ref(rhs);
        out
    }
}

impl<'a> Sub<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        let mut out = self.clone();
        out.add_scaled(rhs, &-ParamScalar::one());
        out
    }
}

impl<'a> Mul<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        assert_eq!(self.nvars, rhs.nvars, "nvars mismatch");
        let mut out = MPoly::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<MPoly> for MPoly {
            type Output = MPoly;
            fn $m(self, rhs: MPoly) -> MPoly {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a MPoly> for MPoly {
            type Output = MPoly;
            fn $m(self, rhs: &MPoly) -> MPoly {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
