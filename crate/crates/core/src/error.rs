use thiserror::Error;

/// Failure modes shared by every operation in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The caller handed us something that violates an operation's precondition.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A construction that is guaranteed to succeed by a theorem failed.
    /// Seeing this means either the implementation or the theorem is wrong.
    #[error("theorem violation: {0}")]
    TheoremViolation(String),

    /// An exhaustive oracle refused an instance larger than its configured bound.
    #[error("{what}: instance has {n} vertices, oracle bound is {bound}")]
    BoundExceeded { what: &'static str, n: usize, bound: usize },

    /// A search hit its deadline or node budget before reaching a verdict.
    #[error("search inconclusive: {0}")]
    Inconclusive(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}

pub(crate) fn violation(msg: impl Into<String>) -> Error {
    Error::TheoremViolation(msg.into())
}
