//! Error types shared across the crate.

use thiserror::Error;

/// Errors produced by model construction, estimators, and I/O.
#[derive(Debug, Error)]
pub enum WwbError {
    /// A parameter is outside its admissible range.
    #[error("parameter error: {0}")]
    Parameter(String),

    /// A function argument is outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// b-adic grid arithmetic failed (index out of range or overflow).
    #[error("grid error: {0}")]
    Grid(String),

    /// An exact-mode operation received non-b-adic input.
    #[error("mode error: {0}")]
    Mode(String),

    /// A size or memory cap was exceeded.
    #[error("resource error: {0}")]
    Resource(String),

    /// Quadrature or another numerical routine failed to converge.
    #[error("numeric error: {0}")]
    Numeric(String),

    /// An estimator could not produce a value (e.g. degenerate input path).
    #[error("estimator error: {0}")]
    Estimator(String),

    /// Too few usable points for a regression fit.
    #[error("fit error: {0}")]
    Fit(String),

    /// Filesystem or serialization failure.
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, WwbError>;
