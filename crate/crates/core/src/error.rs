use thiserror::Error;

use crate::gabidulin::DecodeFailure;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid tower: {0}")]
    InvalidTower(String),

    #[error("expected {expected} coordinates, got {got}")]
    WrongLength { expected: usize, got: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid code parameters: {0}")]
    InvalidCode(String),

    #[error("polynomial degree {degree} exceeds the bound {bound}")]
    DegreeTooLarge { degree: usize, bound: usize },

    #[error("decoding failed: {0}")]
    Decode(#[from] DecodeFailure),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
