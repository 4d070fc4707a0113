use std::fmt;

use crate::scalars::SemiringKind;

/// A syntax error with a 1-based source position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("semiring mismatch: {left} vs {right}")]
    TagMismatch {
        left: SemiringKind,
        right: SemiringKind,
    },

    #[error("{op}: incompatible shapes {}x{} and {}x{}", left.0, left.1, right.0, right.1)]
    Shape {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("inconsistent block structure: {0}")]
    Blocks(String),

    #[error("matrix is not unitary (deviation {0:e})")]
    NotUnitary(f64),

    #[error("syntax error at {0}")]
    Parse(ParseError),

    #[error("type error: {0}")]
    Type(String),

    #[error("unknown identifier `{0}`")]
    UnknownIdentifier(String),

    #[error("invalid signature: {0}")]
    Signature(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("interpretation: {0}")]
    Interpretation(String),

    #[error("precondition violated: {0}")]
    Precondition(String),
}

impl From<ParseError> for Error {
    fn from(e: ParseError) -> Self {
        Error::Parse(e)
    }
}

pub type Result<T> = std::result::Result<T, Error>;
