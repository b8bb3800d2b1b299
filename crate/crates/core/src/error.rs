use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// The inputs do not satisfy the defining equation of the problem.
    #[error("not an instance: {0}")]
    NotAnInstance(String),
    /// The inputs satisfy the equation but not the side conditions of the lemma.
    #[error("outside lemma hypotheses: {0}")]
    OutsideHypotheses(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    /// The requested range would overflow 128-bit arithmetic or memory.
    #[error("{what} is out of range; the maximum admissible value is {max}")]
    RangeOverflow { what: &'static str, max: i128 },
    /// Two independent computations of the same quantity disagreed.
    #[error("cross-check failed: {0}")]
    CrossCheck(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
