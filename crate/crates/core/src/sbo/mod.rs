//! Symmetry breaking operator families as expanded [`FormOperator`]s.

pub mod builders;
mod families;
pub mod json;
mod operator;

pub use families::{
    build_abcd, build_sbo, hodge_compose, hodge_signs, Abcd, Family, HodgeSign, SboSpec,
};
pub use operator::{FormOperator, OpMatrix};
