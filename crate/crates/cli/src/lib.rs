//! Front end of the `coiso` command: manifest parsing, command dispatch and
//! reports. The binary is a thin wrapper around [`run`].

pub mod commands;
pub mod manifest;
pub mod report;

use std::path::PathBuf;

use coiso::coslinalg::CoslinalgError;
use coiso::forms::FormsError;
use coiso::moser::MoserError;
use coiso::thicken::ThickenError;
use thiserror::Error;

pub use commands::{run, Command, Overrides};
pub use manifest::{Manifest, Verification};
pub use report::{ErrorInfo, Report, Status, Summary};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error("cannot read {path}: {message}")]
    Read { path: PathBuf, message: String },
    #[error("cannot write {path}: {message}")]
    Write { path: PathBuf, message: String },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Forms(#[from] FormsError),
    #[error(transparent)]
    Linear(#[from] CoslinalgError),
    #[error(transparent)]
    Thicken(#[from] ThickenError),
    #[error(transparent)]
    Moser(#[from] MoserError),
}

fn variant_name(debug: String) -> String {
    debug.split(['(', ' ', '{']).next().unwrap_or_default().to_string()
}

impl CliError {
    /// Parse errors exit with 2; everything else that stops a command exits with 1.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) | CliError::Usage(_) => 2,
            _ => 1,
        }
    }

    pub fn info(&self) -> ErrorInfo {
        let (module, name) = match self {
            CliError::Parse(_) => ("manifest", "ParseError".to_string()),
            CliError::Read { .. } => ("io", "ReadError".to_string()),
            CliError::Write { .. } => ("io", "WriteError".to_string()),
            CliError::Usage(_) => ("cli", "UsageError".to_string()),
            CliError::Forms(e) => ("forms", variant_name(format!("{e:?}"))),
            CliError::Linear(e) => ("coslinalg", variant_name(format!("{e:?}"))),
            CliError::Thicken(ThickenError::Forms(e)) => ("forms", variant_name(format!("{e:?}"))),
            CliError::Thicken(ThickenError::Linear(e)) => ("coslinalg", variant_name(format!("{e:?}"))),
            CliError::Thicken(e) => ("thicken", variant_name(format!("{e:?}"))),
            CliError::Moser(MoserError::Forms(e)) => ("forms", variant_name(format!("{e:?}"))),
            CliError::Moser(MoserError::Linear(e)) => ("coslinalg", variant_name(format!("{e:?}"))),
            CliError::Moser(e) => ("moser", variant_name(format!("{e:?}"))),
        };
        ErrorInfo { module: module.into(), name, message: self.to_string() }
    }
}
