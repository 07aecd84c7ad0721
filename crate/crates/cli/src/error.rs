use std::process::ExitCode;

use dompack::engine::{EngineError, EngineFailure};
use dompack::oracles::OracleError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Oversize(String),
    /// A construction failed; the optional JSON blob goes to stderr.
    #[error("{message}")]
    Construction { message: String, dump: Option<String> },
    #[error("{0}")]
    Validation(String),
    #[error("{0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(match self {
            CliError::Parse(_) => 2,
            CliError::Oversize(_) => 3,
            CliError::Construction { .. } => 4,
            CliError::Validation(_) => 5,
            CliError::Internal(_) => 1,
        })
    }

    pub fn construction(message: impl Into<String>) -> Self {
        CliError::Construction { message: message.into(), dump: None }
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::Oversize { .. } => CliError::Oversize(e.to_string()),
            OracleError::Infeasible => CliError::Internal(e.to_string()),
        }
    }
}

impl From<EngineFailure> for CliError {
    fn from(f: EngineFailure) -> Self {
        match f.error {
            EngineError::CertificateInvalid(_) | EngineError::SequenceInvalid(_) | EngineError::NotInClass(_) => {
                CliError::Validation(f.error.to_string())
            }
            _ => {
                let dump = serde_json::json!({ "error": f.error.to_string(), "trace": f.trace });
                CliError::Construction { message: f.error.to_string(), dump: Some(dump.to_string()) }
            }
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
