use thiserror::Error;

/// Errors raised by the verification pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown arithmetic function `{0}`")]
    UnknownFunction(String),

    #[error("table limit must be at least 1")]
    EmptyTable,

    #[error("table `{name}` covers n <= {available}, but n <= {needed} is required")]
    TableTooShort {
        name: String,
        needed: usize,
        available: usize,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("degenerate system: {0}")]
    Degenerate(String),

    #[error("work budget exceeded: {0}")]
    Budget(String),

    #[error("inadmissible dyadic ranges: {0}")]
    Inadmissible(String),

    #[error("zero census failed: {0}")]
    Census(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
