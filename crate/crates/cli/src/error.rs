use std::io;
use std::path::PathBuf;

use rmfgeom::GeomError;

/// Everything the CLI can fail with, mapped onto exit codes by
/// [`CliError::exit_code`].
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Geom(#[from] GeomError),

    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },

    #[error("{path}:{line}: {message}")]
    Parse { path: PathBuf, line: usize, message: String },
}

impl CliError {
    pub const OK: i32 = 0;
    pub const USAGE: i32 = 1;
    pub const VALIDATION: i32 = 2;
    pub const DEGENERATE: i32 = 3;

    pub fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        CliError::Io { path: path.into(), source }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Geom(e) if e.is_validation() => Self::VALIDATION,
            CliError::Geom(e) if e.is_degenerate() => Self::DEGENERATE,
            _ => Self::USAGE,
        }
    }
}
