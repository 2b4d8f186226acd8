//! Command-line front end: experiment configs, the protocol catalog and the regression suite.

pub mod catalog;
pub mod config;
pub mod output;
pub mod regress;
pub mod run;

use thiserror::Error;

pub use catalog::{catalog, ProtocolInfo};
pub use config::ExperimentConfig;
pub use regress::{regress, Check};
pub use run::{run_and_write, run_config, RunRecord};

/// Worker-count override for the thread pool.
pub const THREADS_ENV: &str = "RYDGATE_THREADS";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("unknown protocol '{0}'")]
    UnknownProtocol(String),
    #[error("config schema violation: {0}")]
    Schema(String),
    #[error("resource limit: {0}")]
    ResourceLimit(String),
    #[error("io: {0}")]
    Io(String),
    #[error("numerical failure: {0}")]
    Numerical(crate::Error),
    #[error("{0} regression checks failed")]
    Regression(usize),
}

impl CliError {
    /// Errors raised while evaluating a point. Argument errors are config problems.
    pub fn from_numerics(e: crate::Error) -> Self {
        match e {
            crate::Error::InvalidArgument(m) | crate::Error::UnknownLabel(m) => CliError::Schema(m),
            crate::Error::DimensionLimit { dim, limit } => {
                CliError::ResourceLimit(format!("dimension {dim} > {limit}"))
            }
            other => CliError::Numerical(other),
        }
    }

    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            CliError::UnknownProtocol(_) => "unknown_protocol",
            CliError::Schema(_) => "schema_violation",
            CliError::ResourceLimit(_) => "resource_limit",
            CliError::Io(_) => "io_error",
            CliError::Numerical(_) => "numerical_failure",
            CliError::Regression(_) => "regression_failure",
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::UnknownProtocol(_)
            | CliError::Schema(_)
            | CliError::ResourceLimit(_)
            | CliError::Io(_) => 2,
            CliError::Numerical(_) => 3,
            CliError::Regression(_) => 4,
        }
    }
}
