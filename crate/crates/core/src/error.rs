use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("semigroup table entry {value} at ({row}, {col}) is out of range for size {size}")]
    OutOfRange {
        row: usize,
        col: usize,
        value: usize,
        size: usize,
    },
    #[error("semigroup is not associative at ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("unknown {what} {name:?}")]
    Unknown { what: &'static str, name: String },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("rank and elimination are defined over rational entries only")]
    NonRational,
    #[error("degree-0 cochains require a unital semigroup")]
    MissingUnit,
    #[error("degree {degree} exceeds the cap ({reason}); estimated {entries} tensor entries")]
    DegreeCap {
        degree: usize,
        entries: u128,
        reason: String,
    },
    #[error("cochain violates the membership constraint: {0}")]
    Membership(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("linear map is not invertible")]
    NotInvertible,
    #[error("internal consistency check failed: {0}")]
    Consistency(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
