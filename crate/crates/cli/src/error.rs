use std::process::ExitCode;

use thiserror::Error;

/// Failure of a command, with the reason code printed as `error[<code>]`.
#[derive(Debug, Error)]
pub enum CliError {
    /// Malformed ordinal, formula, program spec or proof file.
    #[error("{0}")]
    Parse(String),
    /// Well-formed input that the command does not accept.
    #[error("{0}")]
    Input(String),
    /// A request beyond what the tool will attempt.
    #[error("{0}")]
    Refused(String),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn code(&self) -> &'static str {
        match self {
            CliError::Parse(_) => "parse",
            CliError::Input(_) => "input",
            CliError::Refused(_) => "refused",
            CliError::Io(_) => "io",
        }
    }

    /// `1` is reserved for negative verdicts and `2` for usage errors.
    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(match self {
            CliError::Parse(_) => 3,
            CliError::Input(_) => 4,
            CliError::Refused(_) => 5,
            CliError::Io(_) => 6,
        })
    }
}

pub fn parse_err(e: impl std::fmt::Display) -> CliError {
    CliError::Parse(e.to_string())
}
