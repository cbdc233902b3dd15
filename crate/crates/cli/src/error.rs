use std::path::Path;

use hyperspace_core::GeomError;
use thiserror::Error;

/// One-line, machine-parsable failure: `error[Code]: file: message`.
#[derive(Debug, Error)]
#[error("error[{code}]: {file}: {message}")]
pub struct CliError {
    pub code: &'static str,
    pub file: String,
    pub message: String,
}

impl CliError {
    pub fn geom(file: impl AsRef<Path>, e: GeomError) -> Self {
        Self { code: e.code(), file: file.as_ref().display().to_string(), message: e.to_string() }
    }

    pub fn io(file: impl AsRef<Path>, e: std::io::Error) -> Self {
        Self { code: "IoError", file: file.as_ref().display().to_string(), message: e.to_string() }
    }

    pub fn arg(flag: &str, e: GeomError) -> Self {
        Self { code: e.code(), file: format!("--{flag}"), message: e.to_string() }
    }
}
