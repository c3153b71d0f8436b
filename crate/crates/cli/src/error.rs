use std::path::PathBuf;

/// A malformed line in a distribution or tree file.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(line: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            message: message.into(),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Parse { path: String, source: ParseError },
    #[error(transparent)]
    Core(#[from] markovnet_core::Error),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("unknown export format `{0}` (expected dot or tsv)")]
    UnknownFormat(String),
    #[error("{0}")]
    Usage(String),
    #[error("checks failed:\n{}", .0.join("\n"))]
    CheckFailed(Vec<String>),
}

impl CliError {
    /// 0 success, 1 validation or parse error, 2 numerical integrity error.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(markovnet_core::Error::NumericalIntegrity { .. }) => 2,
            _ => 1,
        }
    }
}
