use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("arc ({u}, {v}) has a label outside 0..{n}")]
    LabelOutOfRange { u: usize, v: usize, n: usize },

    #[error("loop arc ({u}, {u}) is not allowed")]
    Loop { u: usize },

    #[error("digraph is not strong: no dipath from {from} to {to}")]
    NotStrong { from: usize, to: usize },

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("{class} with order {n} is above the enumeration ceiling ({ceiling}); use randomized mode")]
    CeilingExceeded {
        class: String,
        n: usize,
        ceiling: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            pos,
            msg: msg.into(),
        }
    }
}
