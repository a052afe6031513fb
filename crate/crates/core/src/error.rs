use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("not a root of {system}: {vector}")]
    NotARoot { system: String, vector: String },

    #[error("construction failed: {0}")]
    Construction(String),

    #[error("invalid metric: {0}")]
    InvalidMetric(String),

    #[error("not a subalgebra: {0}")]
    NotSubalgebra(String),

    #[error("vector is not in the tangent space m (projection residual {0:e})")]
    NotInTangentSpace(f64),

    #[error("operator {index} is not skew-symmetric for the metric (defect {defect:e})")]
    NonSkewOperator { index: usize, defect: f64 },

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("excluded case: {0}")]
    Excluded(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
