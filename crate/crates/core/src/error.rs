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

    #[error("feature table line {line}, column {column}: {message}")]
    MalformedRow {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("duplicate symbol {symbol:?} (line {line})")]
    DuplicateSymbol { symbol: String, line: usize },

    #[error("unknown {category} name {value:?} (line {line}, column {column})")]
    UnknownCategory {
        category: &'static str,
        value: String,
        line: usize,
        column: usize,
    },

    #[error("unknown symbol {symbol:?} at character {position}")]
    UnknownSymbol { symbol: String, position: usize },

    #[error("unsupported diacritic U+{codepoint:04X} at character {position}")]
    UnsupportedDiacritic { codepoint: u32, position: usize },

    #[error("{message} at character {position}")]
    Syntax { message: String, position: usize },

    #[error("symbol {symbol:?} is not in the feature table")]
    NotInTable { symbol: String },

    #[error("token {index}: {source}")]
    AtToken {
        index: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("inventory {path}: {message}")]
    Inventory { path: String, message: String },

    #[error("unknown language code {code:?}; available: {}", available.join(", "))]
    UnknownLanguage {
        code: String,
        available: Vec<String>,
    },

    #[error("utterance contains no phonemes; unseen phoneme rate is undefined")]
    UndefinedUpr,

    #[error("empty {0}")]
    Empty(&'static str),

    #[error("reference transcript is empty after normalization")]
    EmptyReference,

    #[error("k = {k} is out of range 1..={n}")]
    KOutOfRange { k: usize, n: usize },

    #[error("matrix format: {0}")]
    Format(String),

    #[error("line {line}: {source}")]
    AtLine {
        line: usize,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn at_token(self, index: usize) -> Self {
        Error::AtToken {
            index,
            source: Box::new(self),
        }
    }

    pub(crate) fn at_line(self, line: usize) -> Self {
        Error::AtLine {
            line,
            source: Box::new(self),
        }
    }
}
