use thiserror::Error;

/// Errors raised by graph construction, recognition and the decomposer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    MalformedInput(String),
    #[error("capability exceeded: {0}")]
    Capability(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("out of scope: {0}")]
    OutOfScope(String),
    #[error("search budget exhausted: {0}")]
    BudgetExhausted(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

macro_rules! internal {
    ($($arg:tt)*) => {
        $crate::error::Error::Internal(format!($($arg)*))
    };
}
pub(crate) use internal;
