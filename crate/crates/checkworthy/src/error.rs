//! Error type shared across the pipeline.

use std::path::PathBuf;

use thiserror::Error;

/// Errors surfaced by corpus loading, training, OCR and evaluation.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}:{line}: {msg}")]
    MalformedLine {
        path: PathBuf,
        line: usize,
        msg: String,
    },

    #[error("{path}:{line}: unknown label {value:?} (expected \"Yes\" or \"No\")")]
    UnknownLabel {
        path: PathBuf,
        line: usize,
        value: String,
    },

    #[error("duplicate tweet_id {id:?} in {path} (lines {first} and {second})")]
    DuplicateId {
        path: PathBuf,
        id: String,
        first: usize,
        second: usize,
    },

    #[error("tweet {tweet_id}: {msg}")]
    Image { tweet_id: String, msg: String },

    #[error("tweet {tweet_id}: OCR engine failure: {msg}")]
    Ocr { tweet_id: String, msg: String },

    #[error("training: {0}")]
    Train(String),

    #[error("evaluation: {0}")]
    Eval(String),

    #[error("fusion: {0}")]
    Fusion(String),

    #[error("model store: {0}")]
    Model(String),

    #[error("invalid configuration: {0}")]
    Config(String),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
