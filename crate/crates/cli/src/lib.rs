//! Verification sweeps and command implementations behind the `galcoh` binary.


pub mod commands;
pub mod config;
pub mod input;
pub mod report;
pub mod selftest;

pub mod sweep;

use galcoh_core::cohomology::CohomologyError;

pub use config::SweepConfig;
pub use report::{Outcome, Record, VerificationReport};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("{0}")]
    Resource(String),
    #[error("{0}")]
    Math(String),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Math(_) => 1,
            CliError::Usage(_) | CliError::Io(_) => 2,
            CliError::Resource(_) => 3,
        }
    }
}

impl From<CohomologyError> for CliError {
    fn from(e: CohomologyError) -> Self {
        match e {
            CohomologyError::ResourceBound { .. } => CliError::Resource(e.to_string()),
            CohomologyError::Module(_) | CohomologyError::WrongLength { .. } => CliError::Usage(e.to_string()),
            other => CliError::Math(other.to_string()),
        }
    }
}
