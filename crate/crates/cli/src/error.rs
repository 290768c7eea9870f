use std::path::PathBuf;

use thiserror::Error;

/// Exit codes of the `ucnorm` binary.
pub mod exit {
    pub const OK: u8 = 0;
    /// Negative verdict: failed check, infeasible problem, violated inequality.
    pub const NEGATIVE: u8 = 2;
    pub const UNDECIDED: u8 = 3;
    /// Malformed input, bad usage or unreadable files.
    pub const PARSE: u8 = 64;
    /// Well-formed input with inconsistent dimensions or values.
    pub const DIMENSION: u8 = 65;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("{0}")]
    Format(String),

    #[error("{path}: {source}")]
    InFile {
        path: PathBuf,
        #[source]
        source: Box<CliError>,
    },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Core(#[from] ucnorm::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse { .. } | CliError::Format(_) | CliError::Io { .. } | CliError::Usage(_) => exit::PARSE,
            CliError::InFile { source, .. } => source.exit_code(),
            CliError::Core(ucnorm::Error::Unsupported(_)) => exit::PARSE,
            CliError::Core(_) => exit::DIMENSION,
        }
    }

    pub fn in_file(self, path: impl Into<PathBuf>) -> Self {
        match self {
            CliError::InFile { .. } | CliError::Io { .. } => self,
            other => CliError::InFile {
                path: path.into(),
                source: Box::new(other),
            },
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
