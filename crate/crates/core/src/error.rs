use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("rule number {0} is outside 0..=255")]
    RuleOutOfRange(u32),

    #[error("window length {window} does not fit in a row of width {width}")]
    WindowTooLong { window: usize, width: usize },

    #[error("invalid argument: {0}")]
    Domain(String),

    #[error("extended tape of width {width} + 2*{t_max} exceeds addressable size")]
    TapeTooLarge { width: usize, t_max: usize },

    #[error("invalid probability vector: {0}")]
    InvalidDistribution(String),

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("internal consistency error: {0}")]
    Internal(String),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
