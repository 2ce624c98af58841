//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("incompatible operands: {0}")]
    Incompatible(String),
    #[error("unknown generator '{0}'")]
    UnknownGenerator(String),
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("invalid form: {0}")]
    InvalidForm(String),
    #[error("axiom violation ({axiom}): {detail}")]
    AxiomViolation { axiom: String, detail: String },
    #[error("nilpotency failure: {0}")]
    NilpotencyFailure(String),
    #[error("non-homogeneous input: {0}")]
    NonHomogeneous(String),
    #[error("truncation too small: {0}")]
    TruncationTooSmall(String),
    #[error("Miura mismatch: {0}")]
    MiuraMismatch(String),
    #[error("not a Virasoro field: {0}")]
    NotVirasoro(String),
    #[error("closure failure: {0}")]
    ClosureFailure(String),
    #[error("filtration mismatch: {0}")]
    FiltrationMismatch(String),
    #[error("Jacobi violation: {0}")]
    JacobiViolation(String),
    #[error("critical level")]
    CriticalLevel,
    #[error("length cap insufficient, need at least {0}")]
    CapInsufficient(usize),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
