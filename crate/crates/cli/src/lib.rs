//! Command-line front end: configuration files, rate reports, parameter
//! sweeps, oracle validation and simulation runs.

pub mod commands;
pub mod config;
pub mod model;
pub mod output;

use std::fmt;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Failure classes, one per process exit code.
#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    /// Some validation row exceeded its bound (exit 1).
    Validation(String),
    /// Unreadable or invalid configuration (exit 2).
    Config(String),
    /// Numerical, statistical or I/O failure while running (exit 3).
    Runtime(String),
}

impl CliError {
    pub fn config(msg: impl Into<String>) -> Self {
        CliError::Config(msg.into())
    }

    pub fn runtime(msg: impl Into<String>) -> Self {
        CliError::Runtime(msg.into())
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 1,
            CliError::Config(_) => 2,
            CliError::Runtime(_) => 3,
        }
    }

    /// Maps a core error raised while building section `section`, turning
    /// domain errors into `section.field` diagnostics.
    pub fn in_section(section: &str) -> impl Fn(radtherm_core::Error) -> CliError + '_ {
        move |e| match e {
            radtherm_core::Error::Domain { field, value, reason } => {
                CliError::Config(format!("`{section}.{field}`: {reason} (got {value})"))
            }
            other => CliError::from(other),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Validation(m) => write!(f, "validation failed: {m}"),
            CliError::Config(m) => write!(f, "configuration error: {m}"),
            CliError::Runtime(m) => write!(f, "runtime error: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<radtherm_core::Error> for CliError {
    fn from(e: radtherm_core::Error) -> Self {
        use radtherm_core::Error as E;
        match e {
            E::Domain { .. } | E::Config(_) | E::Pole(_) | E::UnsupportedPairing(_) => CliError::Config(e.to_string()),
            _ => CliError::Runtime(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Runtime(format!("i/o: {e}"))
    }
}
