use thiserror::Error;

/// CLI failure classes, each mapping to a fixed process exit code:
/// validation → 1, verification → 2, I/O → 3.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),

    #[error("{0}")]
    Verification(String),

    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Validation(_) => 1,
            CliError::Verification(_) => 2,
            CliError::Io(_) => 3,
        }
    }
}

impl From<nullmeas::Error> for CliError {
    fn from(err: nullmeas::Error) -> Self {
        CliError::Validation(err.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(err: std::io::Error) -> Self {
        CliError::Io(err.to_string())
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
