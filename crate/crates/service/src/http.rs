//! JSON-over-HTTP wire protocol.
//!
//! | Method | Path | Body / query | Response |
//! |---|---|---|---|
//! | GET | `/catalog` | | catalog document plus psychological factors |
//! | GET | `/sessions` | | session summaries |
//! | POST | `/sessions` | `CreateSession` | `201` `{view, events}` |
//! | GET | `/sessions/{id}` | `?since=N` | `{view, events}` with `sequence >= N` |
//! | POST | `/sessions/{id}/commands` | `CommandRequest` | `{view, events}` appended |
//! | GET | `/sessions/{id}/report` | | `{status, report}` |
//! | GET | `/sessions/{id}/hint` | | Greedy suggestion for the human seat |
//!
//! Errors are `{"error": message}` with 400 (bad config or body), 403 (hints off),
//! 404 (unknown session), 409 (stale or finished), 422 (illegal command).

use std::net::SocketAddr;
use std::sync::Arc;

use axum::extract::rejection::JsonRejection;
use axum::extract::{Path, Query, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use dpgame_core::analytics::GameReport;
use dpgame_core::catalog::{Catalog, PsychFactor};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::session::{
    load_catalog_ref, CommandRequest, CreateSession, SessionError, SessionStatus, SessionView, WireEvent,
    DEFAULT_CATALOG,
};
use crate::store::SessionStore;

pub struct ApiError(SessionError);

impl From<SessionError> for ApiError {
    fn from(err: SessionError) -> Self {
        ApiError(err)
    }
}

impl From<JsonRejection> for ApiError {
    fn from(rejection: JsonRejection) -> Self {
        ApiError(SessionError::BadConfig(rejection.body_text()))
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let status = match &self.0 {
            SessionError::UnknownSession(_) => StatusCode::NOT_FOUND,
            SessionError::Conflict { .. } | SessionError::Finished => StatusCode::CONFLICT,
            SessionError::HintsDisabled => StatusCode::FORBIDDEN,
            SessionError::UnknownPolicy(_) | SessionError::BadConfig(_) => StatusCode::BAD_REQUEST,
            SessionError::Catalog { .. }
            | SessionError::Illegal(_)
            | SessionError::OutOfTurn { .. }
            | SessionError::AiSeat(_)
            | SessionError::HumanSeat(_) => StatusCode::UNPROCESSABLE_ENTITY,
            SessionError::Replay(_) | SessionError::Io(_) => StatusCode::INTERNAL_SERVER_ERROR,
        };
        (status, Json(json!({ "error": self.0.to_string() }))).into_response()
    }
}

#[derive(Debug, Default, Deserialize)]
pub struct Since {
    #[serde(default)]
    pub since: u64,
}

#[derive(Debug, Serialize)]
pub struct SessionPage<'a> {
    pub view: &'a SessionView,
    pub events: &'a [WireEvent],
}

#[derive(Debug, Serialize)]
pub struct ReportPage<'a> {
    pub status: SessionStatus,
    pub report: &'a GameReport,
}

pub fn router(store: Arc<SessionStore>) -> Router {
    Router::new()
        .route("/catalog", get(catalog))
        .route("/sessions", get(list_sessions).post(create_session))
        .route("/sessions/{id}", get(get_session))
        .route("/sessions/{id}/commands", post(post_command))
        .route("/sessions/{id}/report", get(get_report))
        .route("/sessions/{id}/hint", get(get_hint))
        .with_state(store)
}

async fn catalog() -> Result<Json<serde_json::Value>, ApiError> {
    let catalog: Arc<Catalog> = load_catalog_ref(DEFAULT_CATALOG)?;
    let mut doc = serde_json::to_value(&*catalog).expect("catalog serializes");
    let factors: Vec<_> = PsychFactor::ALL.iter().map(|f| json!({ "name": f.name(), "pole": f.pole() })).collect();
    doc["psych_factors"] = json!(factors);
    Ok(Json(doc))
}

async fn list_sessions(State(store): State<Arc<SessionStore>>) -> Response {
    Json(store.list()).into_response()
}

async fn create_session(
    State(store): State<Arc<SessionStore>>,
    request: Result<Json<CreateSession>, JsonRejection>,
) -> Result<Response, ApiError> {
    let Json(request) = request?;
    let outcome = blocking(move || store.create(&request)).await?;
    Ok((StatusCode::CREATED, Json(outcome)).into_response())
}

async fn get_session(
    State(store): State<Arc<SessionStore>>,
    Path(id): Path<String>,
    Query(since): Query<Since>,
) -> Result<Response, ApiError> {
    let snapshot = store.snapshot(&id)?;
    let page = SessionPage { view: &snapshot.view, events: snapshot.events_since(since.since) };
    Ok(Json(page).into_response())
}

async fn post_command(
    State(store): State<Arc<SessionStore>>,
    Path(id): Path<String>,
    request: Result<Json<CommandRequest>, JsonRejection>,
) -> Result<Response, ApiError> {
    let Json(request) = request?;
    let outcome = blocking(move || store.command(&id, &request)).await?;
    Ok(Json(outcome).into_response())
}

async fn get_report(State(store): State<Arc<SessionStore>>, Path(id): Path<String>) -> Result<Response, ApiError> {
    let snapshot = store.snapshot(&id)?;
    Ok(Json(ReportPage { status: snapshot.view.status, report: &snapshot.report }).into_response())
}

async fn get_hint(State(store): State<Arc<SessionStore>>, Path(id): Path<String>) -> Result<Response, ApiError> {
    let hint = blocking(move || store.hint(&id)).await?;
    Ok(Json(hint).into_response())
}

async fn blocking<T, F>(f: F) -> Result<T, ApiError>
where
    F: FnOnce() -> Result<T, SessionError> + Send + 'static,
    T: Send + 'static,
{
    tokio::task::spawn_blocking(f)
        .await
        .map_err(|e| ApiError(SessionError::BadConfig(format!("worker failed: {e}"))))?
        .map_err(ApiError)
}

/// Serves until ctrl-c.
pub async fn serve(store: Arc<SessionStore>, addr: SocketAddr) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    tracing::info!(addr = %listener.local_addr()?, "listening");
    axum::serve(listener, router(store))
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await
}
