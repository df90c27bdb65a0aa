//! Verification suites, tables and reports behind the `biaxial` binary.

pub mod commands;
pub mod config;
pub mod output;
pub mod suites;

use thiserror::Error;

pub use config::{Format, RunConfig};
pub use suites::{run_suite, Check, Suite};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("computation failed: {0}")]
    Core(#[from] biaxial_core::Error),
    #[error("output failed: {0}")]
    Io(#[from] std::io::Error),
    #[error("serialisation failed: {0}")]
    Format(String),
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            Self::Config(_) => "config",
            Self::Core(_) => "domain",
            Self::Io(_) => "io",
            Self::Format(_) => "format",
        }
    }
}
