use thiserror::Error;

/// Errors raised across the library.
///
/// Axiom violations are not errors: `validate_table` reports them in a
/// [`ValidationReport`](crate::quandle::ValidationReport). Errors here are
/// malformed inputs, failed preconditions and exhausted budgets.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("a quandle must have at least one element")]
    EmptyQuandle,
    #[error("row {row} has length {len}, expected {expected}")]
    RaggedRow { row: usize, len: usize, expected: usize },
    #[error("table entry ({row}, {col}) = {value} is outside [0, {n})")]
    EntryOutOfRange { row: usize, col: usize, value: i64, n: usize },
    #[error("quandle axiom violated: {0}")]
    AxiomViolation(String),
    #[error("parameter t = {t} is not a unit modulo {n}")]
    NonUnitParameter { t: i64, n: usize },
    #[error("not a group table: {0}")]
    GroupAxiom(String),
    #[error("index {index} out of range for size {size}")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("capacity exceeded: {0}")]
    Capacity(String),
    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("subset is not invariant under the action")]
    NotInvariant,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("coefficient domains differ: {0} vs {1}")]
    DomainMismatch(String, String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("submodule is not contained in the ambient submodule")]
    NotContained,
    #[error("characteristic {characteristic} divides orbit size {orbit_size}")]
    NonSplit { characteristic: u64, orbit_size: usize },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(err: serde_json::Error) -> Self {
        Error::Parse(err.to_string())
    }
}
