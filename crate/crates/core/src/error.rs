use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("shape error: {0}")]
    Shape(String),

    #[error("config error: {0}")]
    Config(String),

    #[error("integral space has rank {rank}, expected 1")]
    IntegralRank { rank: usize },

    #[error("switchback failed: {0}")]
    Switchback(String),

    #[error("degenerate pairing: switchback scalar is zero")]
    DegeneratePairing,

    #[error("hypothesis violated: {0}")]
    NotCommutative(String),

    #[error("parse error at {line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("arity error at {line}:{column}: {message}")]
    Arity {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("context error: {0}")]
    Context(String),
}

impl Error {
    pub(crate) fn shape(msg: impl Into<String>) -> Self {
        Error::Shape(msg.into())
    }

    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }
}
