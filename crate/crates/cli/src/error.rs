use thiserror::Error;

use crate::alg::LoadError;

/// Process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitCode {
    Success = 0,
    ValidationFailure = 1,
    ParseError = 2,
    PreconditionFailure = 3,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Load(#[from] LoadError),

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("validation failed: {0}")]
    Validation(String),

    #[error("{0}")]
    Precondition(String),

    #[error(transparent)]
    Core(#[from] nilcx::Error),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        use nilcx::Error as E;
        match self {
            CliError::Load(_) | CliError::Argument(_) => ExitCode::ParseError,
            CliError::Validation(_) => ExitCode::ValidationFailure,
            CliError::Precondition(_) => ExitCode::PreconditionFailure,
            CliError::Core(e) => match e {
                E::Antisymmetry { .. }
                | E::Jacobi { .. }
                | E::NotNilpotent { .. }
                | E::InvalidStructure(_) => ExitCode::ValidationFailure,
                E::UnknownEntry(_) | E::InvalidParameters(_) => ExitCode::ParseError,
                _ => ExitCode::PreconditionFailure,
            },
        }
    }
}
