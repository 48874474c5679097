use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Io(String),
    #[error(transparent)]
    Core(#[from] rado_core::Error),
}

pub type CliResult<T> = Result<T, CliError>;

/// Machine-readable error object written to stdout on failure.
#[derive(Debug, Serialize)]
pub struct ErrorReport {
    pub error: &'static str,
    pub message: String,
    pub exit_code: i32,
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    /// 2 for invalid input, 3 for capacity and budget limits, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        use rado_core::Error as E;
        match self {
            CliError::Usage(_) | CliError::Io(_) => 2,
            CliError::Core(E::Capacity { .. } | E::Budget { .. }) => 3,
            CliError::Core(E::Internal(_)) => 1,
            CliError::Core(_) => 2,
        }
    }

    pub fn kind(&self) -> &'static str {
        use rado_core::Error as E;
        match self {
            CliError::Usage(_) => "usage",
            CliError::Io(_) => "io",
            CliError::Core(E::InvalidInput(_)) => "invalid_input",
            CliError::Core(E::Capacity { .. }) => "capacity",
            CliError::Core(E::Budget { .. }) => "budget",
            CliError::Core(E::RankDeficient { .. }) => "rank_deficient",
            CliError::Core(E::NoCertificate(_)) => "no_certificate",
            CliError::Core(E::MismatchedPrimes(..)) => "mismatched_primes",
            CliError::Core(E::Internal(_)) => "internal",
        }
    }

    pub fn report(&self) -> ErrorReport {
        ErrorReport { error: self.kind(), message: self.to_string(), exit_code: self.exit_code() }
    }
}
