//! Error types shared by all solver modules.

use thiserror::Error;

/// Errors produced by the annulus solvers.
#[derive(Debug, Error)]
pub enum Error {
    /// An input violated a domain precondition (nonpositive length, density, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// The requested object does not exist for the given parameters.
    #[error("infeasible: {0}")]
    Infeasible(String),

    /// A parameter fell outside the range the solver can invert or resolve.
    #[error("out of range: {0}")]
    Range(String),

    /// A mass matrix was not positive definite (density nonpositive somewhere).
    #[error("definiteness error: {0}")]
    Definiteness(String),

    /// Too few quadrature points or grid nodes for the requested computation.
    #[error("resolution error: {0}")]
    Resolution(String),

    /// An input object failed its own consistency contract.
    #[error("inconsistent input: {0}")]
    Inconsistent(String),

    /// A bracketed root search failed to converge.
    #[error("root finding failed: {0}")]
    RootFinding(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

/// Checks that a named quantity is strictly positive and finite.
pub(crate) fn require_positive(name: &str, value: f64) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(Error::domain(format!(
            "{name} must be positive, got {value}"
        )))
    }
}
