use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live in different field contexts")]
    MixedContext,
    #[error("argument must be nonzero")]
    ZeroArgument,
    #[error("parse error at position {pos}: {message}")]
    Parse { pos: usize, message: String },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("conjugating matrix is singular")]
    SingularConjugator,
    #[error("characteristic polynomial does not split over the scalar field: {0}")]
    EigenvaluesNotFound(String),
    #[error("expected {expected} parameters, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("pair violates AB = qBA")]
    RelationViolated,
    #[error("degenerate sample point: rank {rank} below expected {expected}")]
    DegeneratePoint { rank: usize, expected: usize },
    #[error("pair is not a recognized stratum direct sum: {0}")]
    UnsupportedShape(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(pos: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            pos,
            message: message.into(),
        }
    }

    pub(crate) fn invalid(message: impl Into<String>) -> Self {
        Error::InvalidInput(message.into())
    }
}
