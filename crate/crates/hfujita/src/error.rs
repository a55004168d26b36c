use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors surfaced by the library. Quadrature failures carry the partial
/// value and the error estimate so callers can decide what to salvage.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected N = {expected}, got N = {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid parameter {name}: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error(
        "quadrature did not converge to tolerance {tol:.3e}: \
         partial value {partial:.6e}, error estimate {estimate:.3e}"
    )]
    QuadratureNonConvergence {
        partial: f64,
        estimate: f64,
        tol: f64,
    },

    #[error("semigroup step unstable at t = {t:.6e}: sup-norm grew by {growth:.3e}; reduce dt")]
    UnstableStep { t: f64, growth: f64 },

    #[error("operator assembly produced a negative off-diagonal weight {weight:.3e} at row {row}")]
    NegativeWeight { row: usize, weight: f64 },

    #[error("Picard iteration failed to contract in certified window [{t0:.6e}, {t1:.6e}]: {detail}")]
    PicardNonConvergence { t0: f64, t1: f64, detail: String },

    #[error("test function rejected: {0}")]
    TestFunctionRejected(String),

    #[error("decay range insufficient for exponent fit: {0}")]
    InsufficientDecayRange(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("serialization error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}
