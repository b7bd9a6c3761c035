//! Error types shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A constructor was asked for a spectrum with no levels.
    #[error("empty spectrum: {0}")]
    EmptySpectrum(String),

    /// A parameter is outside its admissible range.
    #[error("invalid parameter: {0}")]
    Parameter(String),

    /// A window or index range does not fit inside the spectrum.
    #[error("range error: {0}")]
    Range(String),

    /// Matrix dimensions do not match.
    #[error("shape mismatch: {0}")]
    Shape(String),

    /// Input levels are not sorted ascending.
    #[error("ordering error: {0}")]
    Ordering(String),

    /// Not enough data for a statistically meaningful estimate.
    #[error("insufficient data: {0}")]
    InsufficientData(String),

    /// All-zero or otherwise degenerate input where structure is required.
    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    /// Eigensolver failure or a numerical invariant violated beyond tolerance.
    /// Carries whatever diagnostics were cheap to collect at the failure site.
    #[error("numeric error: {0}")]
    Numeric(String),

    /// Configuration file or flag rejected by schema validation.
    #[error("config error: {0}")]
    Config(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
