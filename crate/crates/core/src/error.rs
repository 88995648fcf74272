//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Argument outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Requested accuracy is unreachable at the working precision.
    #[error("precision error: {0}")]
    Precision(String),

    /// Exact-rational and big-float values were mixed in one operation.
    #[error("backend mismatch: {0}")]
    BackendMismatch(String),

    /// Division by a series whose constant term vanishes.
    #[error("series pole: {0}")]
    SeriesPole(String),

    /// A t = 0 contribution is not integrable and regularized mode is off.
    #[error("regularization error: {0}")]
    Regularization(String),

    /// Invalid potential or configuration.
    #[error("validation error: {0}")]
    Validation(String),

    /// Weight is not integrable on the requested contour.
    #[error("integrability error: {0}")]
    Integrability(String),

    /// Vanishing Hankel determinant or otherwise degenerate moment data.
    #[error("degeneracy error: {0}")]
    Degeneracy(String),

    /// Evaluation point too close to the integration contour.
    #[error("proximity error: {0}")]
    Proximity(String),

    /// One-cut/two-cut ansatz failing: singular regularity determinant.
    #[error("criticality error: {0}")]
    Criticality(String),

    /// Iteration failed to converge.
    #[error("convergence error: {0}")]
    Convergence(String),

    /// Input has a shape the implementation does not support.
    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
    pub fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }
    pub fn unsupported(msg: impl Into<String>) -> Self {
        Error::Unsupported(msg.into())
    }
}
