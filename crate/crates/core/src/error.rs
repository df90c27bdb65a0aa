use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right} generators")]
    DimensionMismatch { left: usize, right: usize },

    #[error("grade {grade} out of range for an algebra with {dim} generators")]
    GradeOutOfRange { grade: usize, dim: usize },

    #[error("expected a pure grade-1 element")]
    NotAVector,

    #[error("unsupported dimension: {0}")]
    UnsupportedDimension(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("outside the evaluation domain: {0}")]
    Domain(String),

    #[error("not converged: {0}")]
    NotConverged(String),

    #[error("function class not closed under the requested operation: {0}")]
    ClassClosure(String),

    #[error("near-singular integrand: minimum distance {0:.3e} to the boundary sample")]
    NearSingular(f64),

    #[error("evaluation failed: {0}")]
    Evaluation(String),
}
