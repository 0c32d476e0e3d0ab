use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("slot {slot} out of range for order {order}")]
    SlotOutOfRange { slot: usize, order: usize },

    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),

    #[error("operation not applicable to {algebra}: {reason}")]
    NotApplicable { algebra: String, reason: String },

    #[error("order {order} out of range: {reason}")]
    OrderOutOfRange { order: usize, reason: String },

    #[error("generators do not close under commutation (pair {0}, {1})")]
    NonClosure(usize, usize),

    #[error("casimir element fails to commute with generator {0}")]
    NotCentral(usize),

    #[error("matrix is singular")]
    Singular,

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
