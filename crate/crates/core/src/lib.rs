//! Exact symbolic engine for conformal symmetry breaking operators between
//! differential forms on flat pseudo-Riemannian spaces `R^{p,q}` and their
//! space forms.
//!
//! The crate builds the operator families as expanded constant-coefficient
//! differential operators, proves their covariance identically in the
//! spectral parameter, and classifies all covariant operators of bounded
//! order by exact linear algebra.

pub mod algebra;
pub mod conformal;
pub mod covariance;
pub mod error;
pub mod exterior;
pub mod juhl;
pub mod sbo;
pub mod spaceform;

pub use error::{Result, SboError};
