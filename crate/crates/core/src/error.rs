use thiserror::Error;

/// Errors produced anywhere in the library.
///
/// `kind()` yields a short stable tag used as the machine-parseable prefix
/// of CLI error lines.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed word: {0}")]
    MalformedWord(String),

    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    #[error("search budget of {budget} nodes exhausted after {visited} nodes (partial results discarded)")]
    BudgetExhausted { budget: u64, visited: u64 },

    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub fn kind(&self) -> &'static str {
        match self {
            Error::MalformedWord(_) => "malformed-word",
            Error::Parse { .. } => "parse",
            Error::ResourceLimit(_) => "resource",
            Error::BudgetExhausted { .. } => "budget",
            Error::InvalidGroup(_) => "group",
            Error::Precondition(_) => "precondition",
            Error::Invalid(_) => "invalid",
            Error::Io(_) => "io",
        }
    }

    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::parse(e.line(), e.column(), e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
