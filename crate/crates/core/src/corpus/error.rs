use thiserror::Error;

use super::{DocId, ValidationReport};

/// A broken annotation invariant, located by token or sentence index.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AnnotationError {
    #[error("token {index}: skeleton does not match surface")]
    SkeletonMismatch { index: usize },
    #[error("token {index}: segmentation does not reproduce the skeleton")]
    SegmentationMismatch { index: usize },
    #[error("token {index}: role {role} is not allowed here")]
    RoleOutOfPlace { index: usize, role: String },
    #[error("sentence {index}: token span out of range, overlapping or unordered")]
    BadSpan { index: usize },
    #[error("sentence {index}: {message}")]
    SentenceForm { index: usize, message: String },
}

impl AnnotationError {
    /// Offending token index, when the error is about a token.
    pub fn token_index(&self) -> Option<usize> {
        match self {
            AnnotationError::SkeletonMismatch { index }
            | AnnotationError::SegmentationMismatch { index }
            | AnnotationError::RoleOutOfPlace { index, .. } => Some(*index),
            _ => None,
        }
    }
}

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("metadata rejected: missing {:?}, invalid {:?}", .0.missing, .0.invalid)]
    Rejected(ValidationReport),
    #[error("annotation error: {0}")]
    Annotation(#[from] AnnotationError),
    #[error("empty document")]
    EmptyDocument,
    #[error("document {0} not found")]
    NotFound(DocId),
    #[error("invalid request: {0}")]
    InvalidRequest(String),
    #[error("invalid application profile: {0}")]
    Profile(String),
    #[error("store is locked by another writer")]
    Locked,
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("malformed store file: {0}")]
    Format(#[from] serde_json::Error),
}
