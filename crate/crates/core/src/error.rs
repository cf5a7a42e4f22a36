use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("field tag mismatch")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("not a root: {0:?}")]
    NotARoot(Vec<i64>),
    #[error("invalid diagram automorphism: {0}")]
    InvalidAutomorphism(String),
    #[error("invalid symbol: {0}")]
    InvalidSymbol(String),
    #[error("integrality violation: {0}")]
    IntegralityViolation(String),
    #[error("divided powers are only defined here for root vectors")]
    WrongKind,
    #[error("Λ with zero exponent is not defined; use the h-binomial")]
    UseBinomialInstead,
    #[error("shift produces an invalid symbol: {0}")]
    InvalidShift(String),
    #[error("substitution produces an invalid symbol: {0}")]
    InvalidSubstitution(String),
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
