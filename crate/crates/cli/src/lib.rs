//! Library behind the `susyqm` binary: command implementations, CSV grid
//! export, and run manifests. The binary is a thin clap wrapper so that
//! integration tests can drive commands in-process and byte-compare their
//! output.

pub mod commands;
pub mod grid;
pub mod manifest;

use susyqm_core::CoreError;

/// Stable exit-code contract: 0 success/PASS, 1 quantitative failure,
/// 2 usage error.
#[derive(Debug)]
pub enum CliError {
    /// Bad flags or parameter values; exit code 2.
    Usage(String),
    /// A tolerance or quality gate was breached; exit code 1.
    Quantitative(String),
    /// I/O or evaluation failure; exit code 1.
    Runtime(String),
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    pub fn quantitative(msg: impl Into<String>) -> Self {
        CliError::Quantitative(msg.into())
    }

    pub fn runtime(msg: impl Into<String>) -> Self {
        CliError::Runtime(msg.into())
    }

    pub fn from_core(e: CoreError) -> Self {
        match e {
            CoreError::InvalidConfig { .. } | CoreError::UnknownLabel { .. } => {
                CliError::Usage(e.to_string())
            }
            CoreError::SamplerQuality { .. } => CliError::Quantitative(e.to_string()),
            other => CliError::Runtime(other.to_string()),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Quantitative(_) | CliError::Runtime(_) => 1,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Quantitative(m) | CliError::Runtime(m) => m,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.message())
    }
}

impl std::error::Error for CliError {}
