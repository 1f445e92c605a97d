use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::Json;
use nusus::corpus::{CorpusError, ValidationReport};
use nusus::exercises::ExerciseError;
use nusus::search::SearchError;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ServiceError {
    #[error("missing or unknown session token")]
    Unauthorized,
    #[error("this endpoint is reserved for {0} accounts")]
    Forbidden(&'static str),
    #[error("invalid login or credential")]
    InvalidCredentials,
    #[error("login {0:?} is already taken")]
    Conflict(String),
    #[error("{0}")]
    WeakCredential(String),
    #[error("no text matches this pedagogical context")]
    NoMatchingText,
    #[error("every text of the collection has been served")]
    CollectionExhausted,
    #[error("{0}")]
    MalformedSubmission(String),
    #[error("{0} not found")]
    NotFound(String),
    #[error("metadata rejected")]
    Rejected(ValidationReport),
    #[error("{0}")]
    BadRequest(String),
    #[error("{0}")]
    Internal(String),
}

/// Error body: a stable code and a human-readable detail. Metadata
/// rejections also list the offending fields.
#[derive(Debug, Serialize)]
struct ErrorBody {
    error: &'static str,
    detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    missing: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    invalid: Option<Vec<String>>,
}

impl ServiceError {
    pub fn code(&self) -> &'static str {
        match self {
            ServiceError::Unauthorized => "unauthorized",
            ServiceError::Forbidden(_) => "forbidden",
            ServiceError::InvalidCredentials => "invalid_credentials",
            ServiceError::Conflict(_) => "conflict",
            ServiceError::WeakCredential(_) => "weak_credential",
            ServiceError::NoMatchingText => "no_matching_text",
            ServiceError::CollectionExhausted => "collection_exhausted",
            ServiceError::MalformedSubmission(_) => "malformed_submission",
            ServiceError::NotFound(_) => "not_found",
            ServiceError::Rejected(_) => "metadata_rejected",
            ServiceError::BadRequest(_) => "bad_request",
            ServiceError::Internal(_) => "internal",
        }
    }

    pub fn status(&self) -> StatusCode {
        match self {
            ServiceError::Unauthorized | ServiceError::InvalidCredentials => StatusCode::UNAUTHORIZED,
            ServiceError::Forbidden(_) => StatusCode::FORBIDDEN,
            ServiceError::Conflict(_) | ServiceError::CollectionExhausted => StatusCode::CONFLICT,
            ServiceError::NoMatchingText | ServiceError::NotFound(_) => StatusCode::NOT_FOUND,
            ServiceError::Rejected(_) => StatusCode::UNPROCESSABLE_ENTITY,
            ServiceError::WeakCredential(_) | ServiceError::MalformedSubmission(_) | ServiceError::BadRequest(_) => {
                StatusCode::BAD_REQUEST
            }
            ServiceError::Internal(_) => StatusCode::INTERNAL_SERVER_ERROR,
        }
    }
}

impl IntoResponse for ServiceError {
    fn into_response(self) -> Response {
        let (missing, invalid) = match &self {
            ServiceError::Rejected(r) => (Some(r.missing.clone()), Some(r.invalid.clone())),
            _ => (None, None),
        };
        let detail = match &self {
            ServiceError::Rejected(r) => format!("missing: {}; invalid: {}", r.missing.join(", "), r.invalid.join(", ")),
            other => other.to_string(),
        };
        let body = ErrorBody { error: self.code(), detail, missing, invalid };
        (self.status(), Json(body)).into_response()
    }
}

impl From<CorpusError> for ServiceError {
    fn from(e: CorpusError) -> Self {
        match e {
            CorpusError::Rejected(r) => ServiceError::Rejected(r),
            CorpusError::NotFound(id) => ServiceError::NotFound(format!("document {id}")),
            CorpusError::Annotation(_) | CorpusError::EmptyDocument | CorpusError::InvalidRequest(_) => {
                ServiceError::BadRequest(e.to_string())
            }
            other => ServiceError::Internal(other.to_string()),
        }
    }
}

impl From<SearchError> for ServiceError {
    fn from(e: SearchError) -> Self {
        match e {
            SearchError::Query(q) => ServiceError::BadRequest(q.to_string()),
            SearchError::Corpus(c) => c.into(),
        }
    }
}

impl From<ExerciseError> for ServiceError {
    fn from(e: ExerciseError) -> Self {
        match e {
            ExerciseError::MalformedSubmission(m) => ServiceError::MalformedSubmission(m),
            other => ServiceError::BadRequest(other.to_string()),
        }
    }
}

impl From<std::io::Error> for ServiceError {
    fn from(e: std::io::Error) -> Self {
        ServiceError::Internal(e.to_string())
    }
}

impl From<serde_json::Error> for ServiceError {
    fn from(e: serde_json::Error) -> Self {
        ServiceError::Internal(e.to_string())
    }
}
