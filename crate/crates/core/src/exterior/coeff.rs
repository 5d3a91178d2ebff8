//! The coefficient rings a differential form can carry.

use std::fmt::{Debug, Display};

use crate::algebra::{MPoly, ParamScalar, RatFunc};
use crate::error::Result;

/// A commutative ring of functions in a fixed number of variables, closed
/// under partial differentiation.
pub trait Coeff: Clone + PartialEq + Debug + Display + Send + Sync {
    fn zero_in(nvars: usize) -> Self;
    fn from_poly(p: MPoly) -> Self;
    fn nvars(&self) -> usize;
    fn is_zero(&self) -> bool;
    fn plus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn negated(&self) -> Self;
    fn scaled(&self, c: &ParamScalar) -> Self;
    /// Partial derivative; `var` must be in range.
    fn partial(&self, var: usize) -> Self;
    /// Restriction to `x_last = 0` in one fewer variable.
    fn restricted(&self) -> Result<Self>;

    fn minus(&self, rhs: &Self) -> Self {
        self.plus(&rhs.negated())
    }

    fn one_in(nvars: usize) -> Self {
        Self::from_poly(MPoly::one(nvars))
    }
}

impl Coeff for MPoly {
    fn zero_in(nvars: usize) -> Self {
        MPoly::zero(nvars)
    }
    fn from_poly(p: MPoly) -> Self {
        p
    }
    fn nvars(&self) -> usize {
        MPoly::nvars(self)
    }
    fn is_zero(&self) -> bool {
        MPoly::is_zero(self)
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negated(&self) -> Self {
        -self
    }
    fn scaled(&self, c: &ParamScalar) -> Self {
        self.scale(c)
    }
    fn partial(&self, var: usize) -> Self {
        self.diff_unchecked(var)
    }
    fn restricted(&self) -> Result<Self> {
        Ok(self.restrict_last())
    }
}

impl Coeff for RatFunc {
    fn zero_in(nvars: usize) -> Self {
        RatFunc::zero(nvars)
    }
    fn from_poly(p: MPoly) -> Self {
        RatFunc::from_poly(p)
    }
    fn nvars(&self) -> usize {
        RatFunc::nvars(self)
    }
    fn is_zero(&self) -> bool {
        RatFunc::is_zero(self)
    }
    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn negated(&self) -> Self {
        -self
    }
    fn scaled(&self, c: &ParamScalar) -> Self {
        self.scale(c)
    }
    fn partial(&self, var: usize) -> Self {
        self.diff(var).expect("variable in range")
    }
    fn restricted(&self) -> Result<Self> {
        self.restrict_last()
    }
}
