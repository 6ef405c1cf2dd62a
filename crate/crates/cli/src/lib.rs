//! Library side of the `crdsa` binary: fixtures, the subcommand bodies and
//! the verification suite.

use std::fmt;

use crdsa_core::{BitopError, CrdsaError, FinalgError};

pub mod commands;
pub mod fixtures;
pub mod suite;

/// Everything that ends a command with exit status 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    Usage(String),
    Io(String),
    /// Well-formed arguments whose content the library rejects.
    Input(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Io(m) => write!(f, "I/O error: {m}"),
            CliError::Input(m) => write!(f, "invalid input: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<FinalgError> for CliError {
    fn from(e: FinalgError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<CrdsaError> for CliError {
    fn from(e: CrdsaError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<BitopError> for CliError {
    fn from(e: BitopError) -> Self {
        CliError::Input(e.to_string())
    }
}

/// A command's JSON output and whether its check passed.
#[derive(Debug, Clone, PartialEq)]
pub struct Output {
    pub json: serde_json::Value,
    pub passed: bool,
    /// One line for stderr when the check fails.
    pub reason: Option<String>,
}

impl Output {
    pub fn pass(json: serde_json::Value) -> Self {
        Output {
            json,
            passed: true,
            reason: None,
        }
    }

    pub fn fail(json: serde_json::Value, reason: impl Into<String>) -> Self {
        Output {
            json,
            passed: false,
            reason: Some(reason.into()),
        }
    }

    pub fn verdict(json: serde_json::Value, passed: bool, reason: impl FnOnce() -> String) -> Self {
        if passed {
            Output::pass(json)
        } else {
            Output::fail(json, reason())
        }
    }
}
