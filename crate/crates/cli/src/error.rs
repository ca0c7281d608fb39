use std::process::ExitCode;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("model error: {0}")]
    Model(#[from] djspin::Error),
    #[error("I/O error: {0}")]
    Io(String),
    #[error("verification failed")]
    VerifyFailed,
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(match self {
            CliError::VerifyFailed => 1,
            CliError::Config(_) => 2,
            CliError::Model(_) => 3,
            CliError::Io(_) => 4,
        })
    }
}

pub type CliResult<T> = Result<T, CliError>;
