use thiserror::Error;

pub type Result<T> = std::result::Result<T, OrbitError>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OrbitError {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("rank mismatch: expected {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("point is not in the positive Weyl chamber: {0}")]
    Chamber(String),

    /// Regular-only operation called on a boundary point.
    #[error("non-regular point {0}; use the non-regular bound instead")]
    NonRegular(String),

    #[error("unsupported input: {0}")]
    Unsupported(String),

    /// Interlacing data admits no bordering vector.
    #[error("no solution: {0}")]
    NoSolution(String),

    #[error("structural error: {0}")]
    Structural(String),

    /// Level spectrum lies on the chamber boundary, outside the smooth locus.
    #[error("level {level} is on the chamber boundary: {message}")]
    Boundary { level: usize, message: String },

    #[error("numerical failure: {message} (residual {residual:e})")]
    Numeric { message: String, residual: f64 },

    #[error("reconstruction residual too large at levels {per_level:?}")]
    Reconstruction { per_level: Vec<f64> },
}
