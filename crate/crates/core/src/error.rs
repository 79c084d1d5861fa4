use thiserror::Error;

/// Failure modes shared by every evaluator in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The gamma function has a pole at a non-positive integer.
    #[error("gamma pole at {0}")]
    GammaPole(f64),
    /// A truncated series hit its term cap before the stop rule fired.
    #[error("series did not converge within {max_terms} terms")]
    NoConvergence { max_terms: usize },
    /// An argument lies outside the domain of the formula.
    #[error("domain error: {0}")]
    Domain(String),
    /// The request is well-formed but not covered by this evaluator.
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
