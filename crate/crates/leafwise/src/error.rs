use thiserror::Error;

/// Errors shared across the numerical pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("grid mismatch between operands")]
    GridMismatch,

    #[error("field is not strictly positive (min = {min})")]
    NonPositiveField { min: f64 },

    #[error("eigensolver failed: {0}")]
    Eigensolver(String),

    #[error("shift {shift} is too close to the spectrum (|λ₀ + shift| = {separation:.3e})")]
    NearSingularShift { shift: f64, separation: f64 },

    #[error("iteration did not converge: {0}")]
    NoConvergence(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("hypothesis `{check}` failed: {detail}")]
    Hypothesis { check: String, detail: String },

    #[error("closed-form resultant disagrees with Sylvester determinant ({detail}); transcription bug")]
    ResultantMismatch { detail: String },

    #[error("unknown theorem id `{0}`")]
    UnknownTheorem(String),

    #[error("time integration failed: {0}")]
    Integration(String),

    #[error("Newton iteration failed: {0}")]
    Newton(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("serialization error: {0}")]
    Serde(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
