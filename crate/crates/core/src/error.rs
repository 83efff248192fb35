use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Input text could not be parsed; `line` is 1-based.
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    /// A configurable resource bound was exceeded.
    #[error("resource limit exceeded: {what} (limit {limit})")]
    Resource { what: &'static str, limit: usize },

    #[error("{0} is not prime")]
    NotPrime(u64),

    /// An operation was called outside its stated hypothesis.
    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    /// Two independent computations disagreed; always a bug.
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse { line, message: message.into() }
    }
}
