use thiserror::Error;

/// Errors raised by the symbolic engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SboError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("variable index {index} out of range for {nvars} variables")]
    IndexOutOfRange { index: usize, nvars: usize },
    #[error("exterior derivative of a top-degree form ({degree} = nvars)")]
    DegreeOverflow { degree: usize },
    #[error("metric has dimension {metric}, form lives on {form} variables")]
    MetricDimensionMismatch { metric: usize, form: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("composition is undefined: denominator vanishes identically")]
    DenominatorVanishesIdentically,
    #[error("vector field is not conformal: {0}")]
    NotConformal(String),
    #[error("invalid Gegenbauer index: 2k = {twice_k} exceeds ell = {ell}")]
    InvalidIndex { twice_k: usize, ell: usize },
    #[error("inadmissible operator spec: {0}")]
    InadmissibleSpec(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("generator {0} is not tangential to the hyperplane")]
    NonTangentialGenerator(String),
    #[error("order bound {requested} exceeds the configured maximum {max}")]
    OrderBoundTooLarge { requested: usize, max: usize },
    #[error("twisted pullback requires an integer weight, got {0}")]
    NonIntegerWeight(String),
    #[error("phase mismatch: {0}")]
    PhaseMismatch(String),
    #[error("operators are not equal up to a sign: {0}")]
    SignUndetermined(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, SboError>;
