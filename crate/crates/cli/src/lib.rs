//! Command-line front end for the prime-pair bias toolkit: deterministic
//! CSV/JSON emission, window-parallel censuses, reference-table
//! reproduction and the verification suite.

// Divisibility tests stay in the canonical `n % q == 0` form.
#![allow(clippy::manual_is_multiple_of)]

pub mod cli;
pub mod format;
pub mod report;
pub mod runner;
pub mod tables;
pub mod verify;

use std::io::Write;
use std::path::Path;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Capacity(String),
    #[error("{0}")]
    Verification(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// Exit-code contract: 0 success, 1 usage, 2 capacity, 3 verification.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => 1,
            CliError::Capacity(_) => 2,
            CliError::Verification(_) => 3,
        }
    }
}

impl From<pairbias_core::Error> for CliError {
    fn from(e: pairbias_core::Error) -> CliError {
        match e {
            pairbias_core::Error::Capacity { .. } => CliError::Capacity(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

/// Write an artifact atomically (temp file + rename) so failures never
/// leave partial output behind; `None` writes to stdout.
pub fn write_artifact(path: Option<&Path>, content: &str) -> Result<(), CliError> {
    match path {
        None => {
            std::io::stdout().write_all(content.as_bytes())?;
            Ok(())
        }
        Some(p) => {
            let mut tmp = p.as_os_str().to_owned();
            tmp.push(".tmp");
            let tmp = std::path::PathBuf::from(tmp);
            let res = std::fs::write(&tmp, content).and_then(|()| std::fs::rename(&tmp, p));
            if res.is_err() {
                let _ = std::fs::remove_file(&tmp);
            }
            res.map_err(CliError::from)
        }
    }
}
