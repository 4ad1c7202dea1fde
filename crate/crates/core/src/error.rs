use thiserror::Error;

/// Errors raised by the algebra engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Operands live over different coordinate systems or models, or an
    /// index is out of range.
    #[error("dimension error: {0}")]
    Dimension(String),
    /// An operator was applied outside the domain where it is defined.
    #[error("domain error: {0}")]
    Domain(String),
    /// A finite algebra failed one of its structural checks.
    #[error("construction error: {0}")]
    Construction(String),
    /// Malformed input text (algebra tables and the like).
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
