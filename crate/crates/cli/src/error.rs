use std::path::PathBuf;

use thiserror::Error;
use transcorr::ErrorClass;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] transcorr::Error),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {detail}")]
    BadFile { path: PathBuf, detail: String },
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    /// 2 input error, 3 statistical precondition failure, 4 numerical breakdown.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) => match e.class() {
                ErrorClass::Input => 2,
                ErrorClass::Statistical => 3,
                ErrorClass::Numerical => 4,
            },
            CliError::Io { .. } | CliError::BadFile { .. } | CliError::Usage(_) => 2,
        }
    }

    pub fn io(path: impl Into<PathBuf>) -> impl FnOnce(std::io::Error) -> CliError {
        let path = path.into();
        move |source| CliError::Io { path, source }
    }
}

pub type CliResult<T> = Result<T, CliError>;
