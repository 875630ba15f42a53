use std::path::PathBuf;

/// Errors of the file formats and the command-line front end.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Core(#[from] homdual_core::Error),
    #[error("{0}")]
    Usage(String),
}

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse { line, column, message: message.into() }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }

    /// Stable one-word code printed in diagnostics.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Parse { .. } => "parse",
            Error::Io { .. } => "io",
            Error::Core(homdual_core::Error::Guard { .. }) => "guard",
            Error::Core(_) => "input",
            Error::Usage(_) => "usage",
        }
    }

    /// Process exit status for this error: 3 for resource guards, else 2.
    pub fn exit_code(&self) -> u8 {
        match self {
            Error::Core(e) if e.is_guard() => 3,
            _ => 2,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
