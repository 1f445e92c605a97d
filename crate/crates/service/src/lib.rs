//! HTTP+JSON facade over the corpus: account registration and login, the
//! student exercise loop (request, submit, next) and the teacher flows
//! (search by pedagogical context, add texts, inspect a text).
//!
//! Every endpoint except `/register` and `/login` takes an
//! `Authorization: Bearer <token>` header. The role is checked before the
//! body is read. Errors are JSON objects `{"error": code, "detail": text}`.

pub mod accounts;
pub mod api;
mod error;
mod http;
mod service;

pub use accounts::{Role, Session, UserAccount};
pub use error::ServiceError;
pub use http::{router, serve};
pub use service::{context_from_fields, effective_context, facet_vector, search_hits, Service, ACCOUNTS_FILE, SESSIONS_FILE};
