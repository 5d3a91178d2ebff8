//! Covariance verification and classification of symmetry breaking
//! operators.

mod classify;
mod residual;
mod table;

pub use classify::{
    classify, in_span, multi_indices, necessary_condition, operator_rank, verify_basis,
    ClassifyResult, ClassifySpec, DEFAULT_MAX_ORDER,
};
pub use residual::{
    covariance_residual, monomials_up_to, residual_by_action, verify_family, verify_operator,
    CovarianceReport,
};
pub use table::{
    cell_samples, dimension_sweep, on_table, table_generators, table_n4, CellRow, Sample,
    SweepReport,
};
