//! Error type shared by every numeric and training operation.

use std::fmt;

/// Errors produced by the numeric kernels, model training, metrics and
/// experiment runners.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Operand shapes do not conform (matrix products, batch dims, ...).
    Dimension(String),
    /// A caller-facing precondition was violated.
    Contract(String),
    /// An iterative numeric routine failed to converge or produced
    /// non-finite values.
    Numeric(String),
    /// A matrix expected to be positive (semi-)definite is not.
    NotPsd(String),
    /// Too few samples to estimate the requested quantity.
    InsufficientData(String),
    /// Training produced a non-finite loss. Carries the step at which
    /// the divergence was detected.
    Divergence { step: usize, detail: String },
    /// Sinkhorn ran out of iterations. Carries the final marginal error.
    NonConvergence { marginal_error: f64, detail: String },
    /// An experiment configuration is internally inconsistent.
    Config(String),
    /// Filesystem or serialization failure.
    Io(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Dimension(msg) => write!(f, "dimension mismatch: {msg}"),
            Error::Contract(msg) => write!(f, "contract violation: {msg}"),
            Error::Numeric(msg) => write!(f, "numeric failure: {msg}"),
            Error::NotPsd(msg) => write!(f, "matrix not positive semidefinite: {msg}"),
            Error::InsufficientData(msg) => write!(f, "insufficient data: {msg}"),
            Error::Divergence { step, detail } => {
                write!(f, "training diverged at step {step}: {detail}")
            }
            Error::NonConvergence {
                marginal_error,
                detail,
            } => write!(
                f,
                "iteration limit reached (marginal error {marginal_error:.3e}): {detail}"
            ),
            Error::Config(msg) => write!(f, "invalid configuration: {msg}"),
            Error::Io(msg) => write!(f, "i/o failure: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
