use thiserror::Error;

pub type Result<T> = std::result::Result<T, RegionError>;

#[derive(Debug, Error)]
pub enum RegionError {
    #[error(transparent)]
    Prob(#[from] probkit::ProbError),
    #[error("invalid channel: {0}")]
    InvalidChannel(String),
    #[error("channel does not have the {expected} structure required by this evaluator")]
    WrongStructure { expected: &'static str },
    #[error("auxiliary alphabet {axis} has size {size}, exceeding the cap {cap}")]
    CardinalityCap {
        axis: &'static str,
        size: usize,
        cap: usize,
    },
    #[error("invalid parameter: {0}")]
    InvalidParam(String),
}
