//! Exit-code policy: 2 for anything wrong with the request (usage, config,
//! infeasible model inputs), 1 for failures at run time (instability, I/O).

use std::fmt;

use crate::config::ConfigError;

#[derive(Debug)]
pub enum CliError {
    Config(String),
    Runtime(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Runtime(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(msg) | CliError::Runtime(msg) => msg.fmt(f),
        }
    }
}

impl std::error::Error for CliError {}

impl From<ConfigError> for CliError {
    fn from(error: ConfigError) -> Self {
        CliError::Config(error.0)
    }
}

impl From<contispine_core::Error> for CliError {
    fn from(error: contispine_core::Error) -> Self {
        match error {
            // The simulation left its validity envelope mid-run; everything
            // else is a rejected input.
            contispine_core::Error::Unstable { .. } => CliError::Runtime(error.to_string()),
            _ => CliError::Config(error.to_string()),
        }
    }
}

/// Wrap output-stage failures (directory creation, file writes).
pub fn runtime_error(context: &str, error: impl fmt::Display) -> CliError {
    CliError::Runtime(format!("{context}: {error}"))
}
