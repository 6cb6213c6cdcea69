use thiserror::Error;

pub type Result<T> = std::result::Result<T, PolyError>;

#[derive(Debug, Error)]
pub enum PolyError {
    #[error("variable `{0}` is not declared in this system")]
    UnknownVar(String),
    #[error("variable `{0}` is declared twice")]
    DuplicateVar(String),
    #[error("point has {got} coordinates but the system has {want} variables")]
    BadPoint { got: usize, want: usize },
    #[error("`{0}` is not a rational literal (expected `p` or `p/q` with q != 0)")]
    BadRational(String),
    #[error("{0} has no finite rational value")]
    NotFinite(f64),
    #[error("vertex enumeration is limited to {cap} variables, this system has {dim}")]
    DimensionBudget { dim: usize, cap: usize },
    #[error("elimination exceeded the row budget of {budget} inequalities")]
    RowBudget { budget: usize },
    #[error("vertex enumeration would examine {count} candidate bases, over the budget of {budget}")]
    BasisBudget { count: u128, budget: u128 },
    #[error("malformed system description: {0}")]
    Json(#[from] serde_json::Error),
}
