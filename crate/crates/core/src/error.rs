use thiserror::Error;

/// Errors produced while validating inputs or evaluating operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("level distribution needs at least 2 levels, got {0}")]
    TooFewLevels(usize),

    #[error("probability at level {index} is invalid: {value}")]
    InvalidProbability { index: usize, value: f64 },

    #[error("probabilities sum to {sum}, expected 1 within 1e-9")]
    NotNormalized { sum: f64 },

    #[error("scaled time must be finite and non-negative, got {0}")]
    InvalidTime(f64),

    #[error("click outcome has probability zero (tau = {tau}, no weight above the lowest level decays)")]
    DegenerateClick { tau: f64 },

    #[error("information-gain maximum is not positive ({i_max}); threshold is undefined")]
    DegenerateInfoGain { i_max: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
