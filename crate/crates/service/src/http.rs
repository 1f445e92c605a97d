use std::collections::HashMap;
use std::net::SocketAddr;
use std::sync::Arc;

use axum::body::Bytes;
use axum::extract::{Path, Query, State};
use axum::http::{header, HeaderMap, StatusCode};
use axum::routing::{get, post};
use axum::{Json, Router};
use nusus::exercises::ExerciseKind;
use serde::de::DeserializeOwned;

use crate::api::{AddTextResponse, LoginResponse, RegisterResponse, SearchHit, TextView};
use crate::{context_from_fields, Service, ServiceError};

type Shared = State<Arc<Service>>;

fn bearer(headers: &HeaderMap) -> Result<&str, ServiceError> {
    headers
        .get(header::AUTHORIZATION)
        .and_then(|v| v.to_str().ok())
        .and_then(|v| v.strip_prefix("Bearer "))
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .ok_or(ServiceError::Unauthorized)
}

fn body<T: DeserializeOwned>(bytes: &Bytes) -> Result<T, ServiceError> {
    serde_json::from_slice(bytes).map_err(|e| ServiceError::BadRequest(format!("invalid JSON body: {e}")))
}

/// Like [`body`], but an empty body stands for the default value.
fn body_or_default<T: DeserializeOwned + Default>(bytes: &Bytes) -> Result<T, ServiceError> {
    if bytes.iter().all(u8::is_ascii_whitespace) {
        Ok(T::default())
    } else {
        body(bytes)
    }
}

async fn register(State(s): Shared, bytes: Bytes) -> Result<(StatusCode, Json<RegisterResponse>), ServiceError> {
    Ok((StatusCode::CREATED, Json(s.register(&body(&bytes)?)?)))
}

async fn login(State(s): Shared, bytes: Bytes) -> Result<Json<LoginResponse>, ServiceError> {
    Ok(Json(s.login(&body(&bytes)?)?))
}

async fn student_exercise(State(s): Shared, headers: HeaderMap, bytes: Bytes) -> Result<impl axum::response::IntoResponse, ServiceError> {
    let token = bearer(&headers)?;
    s.authorize(token, crate::Role::Student)?;
    Ok(Json(s.student_exercise(token, &body_or_default(&bytes)?)?))
}

async fn student_submit(State(s): Shared, headers: HeaderMap, bytes: Bytes) -> Result<impl axum::response::IntoResponse, ServiceError> {
    let token = bearer(&headers)?;
    s.authorize(token, crate::Role::Student)?;
    Ok(Json(s.submit(token, &body(&bytes)?)?))
}

async fn teacher_search(State(s): Shared, headers: HeaderMap, bytes: Bytes) -> Result<Json<Vec<SearchHit>>, ServiceError> {
    let token = bearer(&headers)?;
    s.authorize(token, crate::Role::Teacher)?;
    Ok(Json(s.teacher_search(token, &body_or_default(&bytes)?)?))
}

async fn teacher_add(
    State(s): Shared,
    headers: HeaderMap,
    bytes: Bytes,
) -> Result<(StatusCode, Json<AddTextResponse>), ServiceError> {
    let token = bearer(&headers)?;
    s.authorize(token, crate::Role::Teacher)?;
    let out = s.add_text(token, body(&bytes)?)?;
    let status = match out {
        AddTextResponse::Stored { .. } => StatusCode::CREATED,
        AddTextResponse::Pending { .. } => StatusCode::ACCEPTED,
    };
    Ok((status, Json(out)))
}

/// Query parameters: `objective`, `level`, `difficulty`, `category` shape
/// the facet context; `kind` (and optionally `seed`) request a preview.
async fn teacher_text(
    State(s): Shared,
    headers: HeaderMap,
    Path(id): Path<String>,
    Query(q): Query<HashMap<String, String>>,
) -> Result<Json<TextView>, ServiceError> {
    let token = bearer(&headers)?;
    s.authorize(token, crate::Role::Teacher)?;
    let field = |k: &str| q.get(k).map(String::as_str);
    let cp = context_from_fields(field("objective"), field("level"), field("difficulty"), field("category"))
        .map_err(ServiceError::BadRequest)?;
    let preview = match field("kind") {
        Some(k) => {
            let kind: ExerciseKind = k.parse().map_err(ServiceError::BadRequest)?;
            let seed = match field("seed") {
                Some(v) => v.parse().map_err(|_| ServiceError::BadRequest(format!("bad seed {v:?}")))?,
                None => 0,
            };
            Some((kind, seed))
        }
        None => None,
    };
    Ok(Json(s.get_text(token, &id, &cp, preview)?))
}

async fn fallback() -> ServiceError {
    ServiceError::NotFound("route".into())
}

pub fn router(service: Arc<Service>) -> Router {
    Router::new()
        .route("/register", post(register))
        .route("/login", post(login))
        .route("/student/exercise", post(student_exercise))
        .route("/student/submit", post(student_submit))
        .route("/teacher/search", post(teacher_search))
        .route("/teacher/texts", post(teacher_add))
        .route("/teacher/texts/{id}", get(teacher_text))
        .fallback(fallback)
        .with_state(service)
}

/// Serves the API until the process is stopped.
pub async fn serve(service: Arc<Service>, addr: SocketAddr) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    axum::serve(listener, router(service)).await
}
