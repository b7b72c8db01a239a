use thiserror::Error;

/// Errors raised while constructing, checking or (de)serializing bases.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// A precondition on the arguments was not met.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The requested object exceeds a configured size bound.
    #[error("{what} needs {needed}, which exceeds the configured bound {limit}")]
    ResourceBound {
        what: String,
        needed: u128,
        limit: u128,
    },

    /// A serialized document could not be read back.
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
