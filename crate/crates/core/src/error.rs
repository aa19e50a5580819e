use thiserror::Error;

use crate::field::FieldTag;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("line {line}: {message}")]
    FileSyntax { line: usize, message: String },

    #[error("field mismatch: expected {expected}, found {found}")]
    FieldMismatch { expected: FieldTag, found: FieldTag },

    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: u32, right: u32 },

    #[error("cannot differentiate a polynomial of degree 0")]
    ZeroDerivativeDomain,

    #[error("polynomial is not divisible by {divisor}")]
    NotDivisible { divisor: String },

    #[error("expression is not homogeneous (found degrees {low} and {high})")]
    NotHomogeneous { low: u32, high: u32 },

    #[error("value out of range: {0}")]
    OutOfRange(String),

    #[error("duplicate line {0}")]
    DuplicateLine(String),

    #[error("line index {index} out of range for an arrangement of {len} lines")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("point {0} is not a triple point of the arrangement")]
    NotATriplePoint(String),

    #[error("line {index} does not pass through {point}")]
    LineNotIncident { index: usize, point: String },

    #[error("direction {0} vanishes at the deformed point")]
    DirectionThroughPoint(String),

    #[error("deformation parameter must be nonzero")]
    ZeroEpsilon,

    #[error("non-generic deformation: {0}")]
    NonGenericDeformation(String),

    #[error("unknown catalog entry `{0}`")]
    UnknownName(String),

    #[error("pairs identity violated: t2 + 3*t3 = {found}, expected {expected}")]
    PairsIdentityViolated { expected: i64, found: i64 },

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    pub(crate) fn syntax(position: usize, message: impl Into<String>) -> Self {
        Error::Syntax { position, message: message.into() }
    }
}
