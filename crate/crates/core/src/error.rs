//! Crate error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed input data, with the 1-based line number when known.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// A reference between input files does not resolve.
    #[error("referential integrity: {0}")]
    Integrity(String),

    /// A precondition on an operation's arguments was violated.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Matrix/parameter shapes do not line up.
    #[error("shape mismatch: {0}")]
    Shape(String),

    /// AEAD tag verification failed or envelope framing is invalid.
    #[error("authentication failure: {0}")]
    Authentication(String),

    /// Key generation, encapsulation, or key import failed.
    #[error("crypto failure: {0}")]
    Crypto(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }

    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
