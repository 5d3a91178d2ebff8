//! Exact arithmetic: Gaussian rationals, polynomials in the spectral
//! parameter, multivariate polynomials, rational functions and sparse
//! linear algebra.

pub mod gcd;
pub mod linsolve;
mod mpoly;
mod param;
pub mod parse;
mod ratfunc;
mod scalar;

pub use mpoly::{MPoly, Monomial, MAX_VARS};
pub use param::ParamScalar;
pub use ratfunc::{poly_compose, RatFunc};
pub use scalar::Scalar;
