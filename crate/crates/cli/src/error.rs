use std::path::PathBuf;

use thiserror::Error;

#[derive(Error, Debug)]
pub enum CliError {
    #[error("usage error: {0}")]
    Usage(String),

    /// `--help` / `--version` output; not a failure.
    #[error("{0}")]
    Info(String),

    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("check failed: {0}")]
    Assertion(String),

    #[error(transparent)]
    Model(#[from] qrpnn_core::Error),
}

impl CliError {
    pub(crate) fn from_clap(e: clap::Error) -> Self {
        use clap::error::ErrorKind;
        match e.kind() {
            ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Self::Info(e.to_string()),
            _ => Self::Usage(e.to_string()),
        }
    }

    /// 0 success, 1 assertion failure, 2 usage error, 3 I/O error.
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Info(_) => 0,
            Self::Assertion(_) | Self::Model(_) => 1,
            Self::Usage(_) => 2,
            Self::Io { .. } => 3,
        }
    }
}
