use thiserror::Error;

/// Errors raised by the algebraic engines and loaders.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Inputs of the wrong shape (arity, dimension, parity).
    #[error("structural error: {0}")]
    Structure(String),

    /// An identity that must hold exactly did not; indicates a convention slip.
    #[error("convention error: {0}")]
    Convention(String),

    /// An element that must be invertible is not.
    #[error("not invertible: {0}")]
    NotInvertible(String),

    /// A precondition on a section, matrix or series was violated.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A document did not match its schema.
    #[error("parse error at {path}: {message}")]
    Parse { path: String, message: String },

    /// A document parsed but failed semantic validation.
    #[error("validation error: {0}")]
    Validation(String),

    /// Bad command-line input.
    #[error("usage error: {0}")]
    Usage(String),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse { path: path.into(), message: message.into() }
    }
}
