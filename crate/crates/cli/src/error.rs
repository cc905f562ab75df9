use std::fmt;
use std::io;
use std::path::PathBuf;

/// Everything that stops a run before a report exists.
#[derive(Debug)]
pub enum CliError {
    /// Malformed or inconsistent configuration; nothing was computed.
    Config(String),
    Parse { path: PathBuf, message: String },
    Io { path: PathBuf, source: io::Error },
    Csv { path: PathBuf, source: csv::Error },
    Json(serde_json::Error),
    /// The scenario itself violates a numerical precondition (e.g. no spectral gap).
    Numerical(fwlab_core::Error),
}

impl CliError {
    pub fn config(message: impl Into<String>) -> Self {
        CliError::Config(message.into())
    }

    pub fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        CliError::Io { path: path.into(), source }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) | CliError::Parse { .. } => 1,
            CliError::Numerical(_) => 2,
            // Output failures are environment problems, not verdicts.
            CliError::Io { .. } | CliError::Csv { .. } | CliError::Json(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(msg) => write!(f, "config error: {msg}"),
            CliError::Parse { path, message } => write!(f, "cannot parse {}: {message}", path.display()),
            CliError::Io { path, source } => write!(f, "{}: {source}", path.display()),
            CliError::Csv { path, source } => write!(f, "{}: {source}", path.display()),
            CliError::Json(e) => write!(f, "json: {e}"),
            CliError::Numerical(e) => write!(f, "numerical precondition failed: {e}"),
        }
    }
}

impl std::error::Error for CliError {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            CliError::Io { source, .. } => Some(source),
            CliError::Csv { source, .. } => Some(source),
            CliError::Json(e) => Some(e),
            CliError::Numerical(e) => Some(e),
            _ => None,
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Json(e)
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
