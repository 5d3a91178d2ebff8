//! Exterior calculus on flat coordinate spaces: forms with polynomial or
//! rational coefficients, wedge, `d`, interior products, the
//! pseudo-Riemannian Hodge star and codifferential, Lie derivatives and
//! pullbacks.

pub mod basis;
mod coeff;
mod form;
pub mod json;
mod maps;
mod metric;
mod vector;

pub use coeff::Coeff;
pub use form::{Form, PolyForm, RatForm};
pub use maps::RationalMap;
pub use metric::{Metric, Variant};
pub use vector::VectorField;
