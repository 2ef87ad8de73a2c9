use thiserror::Error;

/// Errors reported by every fallible operation in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A documented precondition of the operation does not hold.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// Malformed polynomial, rational or set-spec text.
    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },

    /// A deterministic specialization search ran out of candidate points.
    #[error("specialization exhausted after {attempts} attempts: {context}")]
    SpecializationExhausted { attempts: usize, context: String },

    /// An enumeration or tuple budget was exceeded.
    #[error("budget exceeded: {0}")]
    Budget(String),

    /// An internal consistency check failed. Always an implementation bug.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn precondition<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Precondition(msg.into()))
}
