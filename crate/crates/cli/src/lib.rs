//! Library side of the `conhom` command: the construction registry, fixture
//! loading, claim files and the JSON documents the commands print.

pub mod claims;
pub mod commands;
pub mod fixtures;
pub mod registry;

use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Io(String),
    #[error("timed out after {0} s")]
    Timeout(u64),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Io(_) | CliError::Timeout(_) => 3,
        }
    }
}

/// Settings shared by every command.
#[derive(Clone, Debug)]
pub struct Context {
    pub fixtures: PathBuf,
}

impl Default for Context {
    fn default() -> Self {
        Context { fixtures: PathBuf::from("fixtures") }
    }
}
