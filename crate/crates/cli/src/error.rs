use codesim::SimError;
use polytope::PolyError;
use regions::RegionError;

pub type Result<T> = std::result::Result<T, CliError>;

/// Failure classes, one per exit code, so scripts can tell bad input from
/// blown enumeration budgets from unreadable files.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Well-formed input that asks for something invalid. Exit code 2.
    #[error("{0}")]
    Validation(String),
    /// The request exceeds an enumeration budget. Exit code 3.
    #[error("{0}")]
    Budget(String),
    /// Unreadable or malformed input files. Exit code 4.
    #[error("{0}")]
    Parse(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Budget(_) => 3,
            CliError::Parse(_) => 4,
        }
    }
}

impl From<RegionError> for CliError {
    fn from(e: RegionError) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<probkit::ProbError> for CliError {
    fn from(e: probkit::ProbError) -> Self {
        CliError::Validation(e.to_string())
    }
}

impl From<SimError> for CliError {
    fn from(e: SimError) -> Self {
        match e {
            SimError::Budget { .. } => CliError::Budget(e.to_string()),
            other => CliError::Validation(other.to_string()),
        }
    }
}

impl From<PolyError> for CliError {
    fn from(e: PolyError) -> Self {
        match e {
            PolyError::Json(_) => CliError::Parse(e.to_string()),
            PolyError::DimensionBudget { .. }
            | PolyError::RowBudget { .. }
            | PolyError::BasisBudget { .. } => CliError::Budget(e.to_string()),
            other => CliError::Validation(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Parse(e.to_string())
    }
}
