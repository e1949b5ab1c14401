use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("index {index} out of range (size {size})")]
    OutOfRange { index: usize, size: usize },

    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("unknown variable `{name}` at position {position}")]
    UnknownVariable { name: String, position: usize },

    #[error("variable x{index} at position {position} exceeds arity {arity}")]
    ArityExceeded {
        index: usize,
        arity: usize,
        position: usize,
    },

    #[error("unsupported domain: {0}")]
    UnsupportedDomain(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("interchange format: {0}")]
    Interchange(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn dim_err<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Dimension(msg.into()))
}
