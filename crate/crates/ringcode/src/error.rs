use thiserror::Error;

#[derive(Debug, Error)]
pub enum RingcodeError {
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("invalid element: {0}")]
    InvalidElement(String),
    #[error("operands belong to different rings")]
    RingMismatch,
    #[error("vector length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("invalid weight function: {0}")]
    InvalidWeightFunction(String),
    #[error("invalid Gray map: {0}")]
    InvalidGrayMap(String),
    #[error("generator matrix error: {0}")]
    InvalidGenerator(String),
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("enumeration budget exceeded: {needed} > {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("the zero code has no nonzero codeword; minimum weight undefined")]
    ZeroCode,
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
