use std::process::ExitCode;

use lampwalk::Error;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("cap exceeded: {0}")]
    Cap(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

pub type CliResult<T> = std::result::Result<T, CliError>;

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(match self {
            CliError::Invalid(_) | CliError::Io(_) => 1,
            CliError::Cap(_) => 2,
            CliError::Invariant(_) => 3,
        })
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::BallCapExceeded { .. }
            | Error::TspCapExceeded { .. }
            | Error::BfsRadiusExhausted { .. }
            | Error::CylinderDepth { .. } => CliError::Cap(e.to_string()),
            _ => CliError::Invalid(e.to_string()),
        }
    }
}

impl From<toml::de::Error> for CliError {
    fn from(e: toml::de::Error) -> Self {
        CliError::Invalid(e.to_string())
    }
}
