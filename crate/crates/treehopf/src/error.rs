//! Crate-wide error type.

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("unknown decoration `{0}`")]
    UnknownDecoration(String),
    #[error("unknown type `{0}`")]
    UnknownType(String),
    #[error("decoration id {0} out of range")]
    DecorationRange(u32),
    #[error("type id {0} out of range")]
    TypeRange(u32),
    #[error("invalid vertex address `{0}`")]
    Address(String),
    #[error("decoration alphabet has no semigroup law")]
    MissingSemigroup,
    #[error("semigroup table: {0}")]
    Semigroup(String),
    #[error("alphabet: {0}")]
    Alphabet(String),
    #[error("label {0} occurs twice")]
    LabelCollision(u32),
    #[error("label {0} not present")]
    UnknownLabel(u32),
    #[error("matrix shape: expected {expected} entries per row, found {found}")]
    MatrixShape { expected: usize, found: usize },
    #[error("{0}")]
    Constraint(String),
    #[error("closed form disagrees with series at n={n}, D={d}, T={t}: formula gives {formula}, series gives {series}")]
    ClosedFormMismatch {
        n: usize,
        d: u64,
        t: u64,
        formula: String,
        series: String,
    },
}

impl Error {
    pub fn parse(line: usize, col: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            col,
            msg: msg.into(),
        }
    }

    pub fn constraint(msg: impl Into<String>) -> Self {
        Error::Constraint(msg.into())
    }
}
