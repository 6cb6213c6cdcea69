use thiserror::Error;

pub type Result<T> = std::result::Result<T, SimError>;

#[derive(Debug, Error)]
pub enum SimError {
    #[error(transparent)]
    Prob(#[from] probkit::ProbError),
    #[error(transparent)]
    Region(#[from] regions::RegionError),
    #[error("invalid simulation input: {0}")]
    InvalidInput(String),
    #[error("enumeration budget exceeded: {detail} needs {needed} cells, budget {budget}")]
    Budget {
        detail: &'static str,
        needed: u128,
        budget: u128,
    },
    #[error("likelihood encoder failure: every bin weight is zero for {0}")]
    EncoderFailure(String),
}
