use thiserror::Error;

/// Exit status for unreadable or malformed input.
pub const EXIT_INPUT: i32 = 2;
/// Exit status for a bad flag or an invalid flag combination (EX_USAGE).
pub const EXIT_USAGE: i32 = 64;
/// Exit status when a check (golden suite, verify) finds mismatches.
pub const EXIT_MISMATCH: i32 = 1;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Mismatch(String),
    #[error("{0}")]
    Output(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Input(_) => EXIT_INPUT,
            CliError::Mismatch(_) => EXIT_MISMATCH,
            CliError::Output(_) => 1,
        }
    }

    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    pub fn input(msg: impl Into<String>) -> Self {
        CliError::Input(msg.into())
    }
}

pub type CliResult<T> = Result<T, CliError>;
