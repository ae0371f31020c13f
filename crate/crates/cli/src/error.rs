use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read scene {path}: {source}")]
    ReadScene { path: PathBuf, source: std::io::Error },

    #[error("scene parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },

    #[error("invalid input: {0}")]
    Validation(String),

    #[error("{0}")]
    Usage(String),

    #[error("cannot write {path}: {source}")]
    Output { path: PathBuf, source: std::io::Error },

    #[error("numeric failure: {0}")]
    Numeric(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Numeric(_) => 2,
            _ => 1,
        }
    }

    pub(crate) fn from_json(e: serde_json::Error) -> Self {
        let full = e.to_string();
        // the position is reported separately
        let message = match full.rfind(" at line ") {
            Some(i) => full[..i].to_string(),
            None => full,
        };
        CliError::Parse { line: e.line(), column: e.column(), message }
    }

    /// Input problems detected by the kernels count as validation errors;
    /// anything else is a numeric failure.
    pub(crate) fn from_core(context: &str, e: fuzgeo_core::Error) -> Self {
        use fuzgeo_core::Error as E;
        match e {
            E::NonFinite { .. }
            | E::InvalidSpread { .. }
            | E::UnequalCircularRadii { .. }
            | E::InvalidAlpha(_)
            | E::CoincidentCores
            | E::NotCircular
            | E::NonPositiveScale(_)
            | E::InvalidSampling(_)
            | E::TooFewPoints { .. } => CliError::Validation(format!("{context}: {e}")),
            _ => CliError::Numeric(format!("{context}: {e}")),
        }
    }
}
