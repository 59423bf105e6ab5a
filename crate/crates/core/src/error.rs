use thiserror::Error;

use crate::relation::AxiomReport;

/// Errors raised by the kernel. Semantic outcomes (an axiom failing on a
/// window) are reported through report types, not through this enum, except
/// where an operation cannot proceed on a rejected input.
#[derive(Debug, Error)]
pub enum Error {
    /// Operands from different rings, malformed descriptors, bad elements.
    #[error("structural error: {0}")]
    Structural(String),

    #[error("unsupported operation: {0}")]
    Unsupported(String),

    #[error("invalid ideal: {message}")]
    InvalidIdeal {
        message: String,
        witness: Vec<String>,
    },

    #[error("invalid window: {0}")]
    InvalidWindow(String),

    #[error("limit exceeded: {0}")]
    Limit(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// The input relation is not a quasi-order on the window.
    #[error("rejected input: {}", .0.summary())]
    RejectedInput(Box<AxiomReport>),

    /// Value-group synthesis met a relation that contradicts a proven lemma.
    #[error("inconsistency: {message}")]
    Inconsistency {
        message: String,
        witness: Vec<String>,
    },

    #[error("unknown builtin `{name}`; available: {}", .available.join(", "))]
    Lookup {
        name: String,
        available: Vec<String>,
    },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn structural(msg: impl Into<String>) -> Self {
        Error::Structural(msg.into())
    }

    pub(crate) fn unsupported(msg: impl Into<String>) -> Self {
        Error::Unsupported(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}
