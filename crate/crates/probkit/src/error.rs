use thiserror::Error;

pub type Result<T> = std::result::Result<T, ProbError>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ProbError {
    #[error("distribution mass is {sum}, expected 1 within {tol}")]
    NotNormalized { sum: f64, tol: f64 },
    #[error("negative probability {value} at flat index {index}")]
    NegativeProb { index: usize, value: f64 },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("unknown axis `{0}`")]
    UnknownAxis(String),
    #[error("duplicate axis `{0}`")]
    DuplicateAxis(String),
    #[error("axis sets overlap on `{0}`")]
    OverlappingAxes(String),
    #[error("empty sequence")]
    EmptySequence,
    #[error("enumeration budget exceeded: {cells} cells > {limit}")]
    BudgetExceeded { cells: u128, limit: u128 },
    #[error("invalid parameter: {0}")]
    InvalidParam(String),
}
