use thiserror::Error;

/// Errors produced anywhere in the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at {line}:{col}: {msg}")]
    Parse {
        line: usize,
        col: usize,
        msg: String,
    },
    #[error("{0}")]
    Semantic(String),
    #[error("oracle cap exceeded: {atoms} atoms > cap {cap}")]
    CapExceeded { atoms: usize, cap: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("strategies disagree: {0}")]
    Disagreement(String),
}

impl Error {
    pub fn semantic(msg: impl Into<String>) -> Self {
        Error::Semantic(msg.into())
    }

    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    /// Process exit code used by the command-line tool.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } => 2,
            Error::Semantic(_) | Error::Precondition(_) | Error::Disagreement(_) => 3,
            Error::CapExceeded { .. } => 4,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
