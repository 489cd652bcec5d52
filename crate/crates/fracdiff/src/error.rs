use std::fmt;
use std::process::ExitCode;

use fracdiff_core::Error as CoreError;

/// What went wrong, at the granularity of the process exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Failure {
    /// A validation suite failed (exit 1).
    Validation,
    /// Bad flags, config or input files (exit 2).
    Usage,
    /// A numerical route or quadrature failed (exit 3).
    Numeric,
    /// The input grid is unusable: non-uniform, mismatched, or not decayed
    /// at the edges (exit 4).
    Grid,
}

impl Failure {
    /// The process exit code.
    pub fn code(self) -> u8 {
        match self {
            Failure::Validation => 1,
            Failure::Usage => 2,
            Failure::Numeric => 3,
            Failure::Grid => 4,
        }
    }
}

/// An error on its way to stderr and the exit code.
#[derive(Debug, thiserror::Error)]
#[error("{message}")]
pub struct CliError {
    /// Exit-code class.
    pub failure: Failure,
    /// Message printed to stderr.
    pub message: String,
}

impl CliError {
    /// A usage error (exit 2).
    pub fn usage(message: impl Into<String>) -> Self {
        CliError { failure: Failure::Usage, message: message.into() }
    }

    /// A grid error (exit 4).
    pub fn grid(message: impl Into<String>) -> Self {
        CliError { failure: Failure::Grid, message: message.into() }
    }

    /// A validation failure (exit 1).
    pub fn validation(message: impl Into<String>) -> Self {
        CliError { failure: Failure::Validation, message: message.into() }
    }

    /// Prefix the message with where it happened.
    pub fn context(mut self, what: impl fmt::Display) -> Self {
        self.message = format!("{what}: {}", self.message);
        self
    }

    /// The process exit code.
    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(self.failure.code())
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        let failure = match e {
            CoreError::InvalidParameter { .. }
            | CoreError::InvalidHParams(_)
            | CoreError::Inadmissible { .. }
            | CoreError::TailDivergence { .. }
            | CoreError::Regime => Failure::Usage,
            CoreError::BoundaryFloor { .. } | CoreError::GridMismatch(_) | CoreError::HistoryMismatch { .. } => Failure::Grid,
            _ => Failure::Numeric,
        };
        CliError { failure, message: e.to_string() }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::usage(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::usage(e.to_string())
    }
}

/// Result alias for the command layer.
pub type CliResult<T> = Result<T, CliError>;
