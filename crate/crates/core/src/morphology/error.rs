use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MorphError {
    #[error("unsupported root {0:?}")]
    UnsupportedRoot(String),
    #[error("invalid request: {0}")]
    InvalidRequest(String),
    #[error("missing lexicon entry: {0}")]
    MissingLexiconEntry(String),
    #[error("inconsistent tag: {0}")]
    InconsistentTag(String),
    #[error("malformed data at line {line}: {message}")]
    Data { line: usize, message: String },
}
