use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    /// Malformed input file. `line` is 1-based when known.
    #[error("{context}: line {line}: {message}")]
    Format {
        context: String,
        line: usize,
        message: String,
    },

    #[error("inconsistent tokenizer: {0}")]
    Consistency(String),

    #[error("unsupported vocabulary layout: token {token:?} has a space that is not a prefix")]
    UnsupportedLayout { token: String },

    #[error("symbol {0:?} is not in the vocabulary")]
    UnknownSymbol(String),

    #[error("no spaces in corpus; coverage ratio is undefined")]
    UndefinedRatio,

    #[error("invalid attention bundle: {0}")]
    InvalidBundle(String),

    #[error("every token was dropped before alignment (punctuation/special only)")]
    EmptyAlignment,

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("{0} is undefined for an empty reference")]
    UndefinedMetric(&'static str),

    #[error("invalid fixture spec: {0}")]
    FixtureSpec(String),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
