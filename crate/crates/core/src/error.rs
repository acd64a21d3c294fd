use thiserror::Error;

/// A single well-definedness failure of an action matrix: entry `(row, col)`
/// of matrix `matrix` (all 1-based, as printed) breaks `A[i][j]·m_j ≡ 0 (mod m_i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActionViolation {
    pub matrix: usize,
    pub row: usize,
    pub col: usize,
    pub reason: String,
}

impl std::fmt::Display for ActionViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "matrix {} entry ({}, {}): {}",
            self.matrix, self.row, self.col, self.reason
        )
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u32),
    #[error("extension degree {0} is outside 1..=4")]
    DegreeOutOfRange(u32),
    #[error("field size {0} exceeds the limit of {1}")]
    FieldTooLarge(u64, u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("value {value} is not an element of F_{q}")]
    ElementOutOfField { value: u32, q: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid action: {}", fmt_violations(.0))]
    InvalidAction(Vec<ActionViolation>),
    #[error("{what} = {value} exceeds the bound {limit}")]
    BoundExceeded {
        what: &'static str,
        value: u64,
        limit: u64,
    },
    #[error("submodule does not belong to this lattice")]
    NotInLattice,
    #[error("submodules belong to different ambient modules")]
    AmbientMismatch,
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("unsupported case: {0}")]
    Unsupported(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown check id `{0}`")]
    UnknownCheck(String),
    #[error("internal error: {0}")]
    Internal(String),
}

fn fmt_violations(v: &[ActionViolation]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}

pub type Result<T> = std::result::Result<T, Error>;
