//! The read-only HTTP API over one loaded snapshot.
//!
//! | Method | Path                              | Body                     |
//! |--------|-----------------------------------|--------------------------|
//! | GET    | `/api/health`                     | status and digest        |
//! | GET    | `/api/search?first=&last=&institution=` | name matches       |
//! | GET    | `/api/profiles/{source}/{id}`     | stored profile document  |
//! | POST   | `/api/evaluate`                   | report for the posted profile |
//! | GET    | `/api/evaluate/{source}/{id}`     | report for a stored profile |
//! | GET    | `/api/suggest?kind=&q=`           | recommendations and flags |
//! | GET    | `/api/config`                     | effective configuration  |
//!
//! Errors carry `{"error":{"code","message"}}` with status 400 (bad query or
//! unparseable body), 404 (unknown profile or route), 422 (schema violation)
//! or 500.

use std::collections::HashMap;
use std::sync::Arc;

use axum::body::Bytes;
use axum::extract::{Path, Query, State};
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::Router;
use tower_http::services::ServeDir;

use profilelint_core::corpus::CorpusSnapshot;
use profilelint_core::evaluator::{evaluate, EvalConfig};
use profilelint_core::matcher::analyze;
use profilelint_core::profile::{parse_profile, FieldKind, Profile, SourceTag};
use profilelint_core::ProfileError;

use crate::config::AppConfig;
use crate::render;

pub struct AppState {
    pub snapshot: CorpusSnapshot,
    pub config: AppConfig,
    eval: EvalConfig,
}

impl AppState {
    pub fn new(snapshot: CorpusSnapshot, config: AppConfig) -> Arc<AppState> {
        let eval = config.eval_config();
        Arc::new(AppState { snapshot, config, eval })
    }
}

type Shared = State<Arc<AppState>>;

fn json(status: StatusCode, body: String) -> Response {
    (status, [(header::CONTENT_TYPE, "application/json")], body).into_response()
}

pub struct ApiError {
    status: StatusCode,
    code: &'static str,
    message: String,
}

impl ApiError {
    fn new(status: StatusCode, code: &'static str, message: impl Into<String>) -> ApiError {
        ApiError { status, code, message: message.into() }
    }

    fn bad_request(code: &'static str, message: impl Into<String>) -> ApiError {
        ApiError::new(StatusCode::BAD_REQUEST, code, message)
    }

    fn not_found(message: impl Into<String>) -> ApiError {
        ApiError::new(StatusCode::NOT_FOUND, "not_found", message)
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        if self.status.is_server_error() {
            tracing::error!(code = self.code, "{}", self.message);
        }
        json(self.status, render::error(self.code, &self.message))
    }
}

impl From<ProfileError> for ApiError {
    fn from(e: ProfileError) -> Self {
        match e {
            ProfileError::MalformedDocument(_) => ApiError::bad_request("malformed_document", e.to_string()),
            ProfileError::SchemaViolation(_) => {
                ApiError::new(StatusCode::UNPROCESSABLE_ENTITY, "schema_violation", e.to_string())
            }
        }
    }
}

type ApiResult = Result<Response, ApiError>;

fn ok(body: String) -> ApiResult {
    Ok(json(StatusCode::OK, body))
}

fn param<'a>(params: &'a HashMap<String, String>, name: &str) -> Result<&'a str, ApiError> {
    params
        .get(name)
        .map(String::as_str)
        .filter(|v| !v.trim().is_empty())
        .ok_or_else(|| ApiError::bad_request("missing_parameter", format!("query parameter `{name}` is required")))
}

fn stored<'a>(state: &'a AppState, source: &str, id: &str) -> Result<&'a Profile, ApiError> {
    let source: SourceTag = source.parse().map_err(|e: String| ApiError::bad_request("bad_source", e))?;
    state.snapshot.profile(source, id).ok_or_else(|| ApiError::not_found(format!("no profile {source}/{id}")))
}

async fn health(State(state): Shared) -> ApiResult {
    ok(render::health(&state.snapshot))
}

async fn search(State(state): Shared, Query(params): Query<HashMap<String, String>>) -> ApiResult {
    let first = param(&params, "first")?;
    let last = param(&params, "last")?;
    let institution = params.get("institution").map(String::as_str).filter(|s| !s.trim().is_empty());
    ok(render::matches(&state.snapshot.search_profiles(first, last, institution)))
}

async fn profile(State(state): Shared, Path((source, id)): Path<(String, String)>) -> ApiResult {
    ok(render::profile(stored(&state, &source, &id)?))
}

async fn evaluate_posted(State(state): Shared, body: Bytes) -> ApiResult {
    let text = std::str::from_utf8(&body)
        .map_err(|_| ApiError::bad_request("malformed_document", "request body is not UTF-8"))?;
    let parsed = parse_profile(text)?;
    ok(render::report(&evaluate(&state.snapshot, &parsed.profile, &state.eval)))
}

async fn evaluate_stored(State(state): Shared, Path((source, id)): Path<(String, String)>) -> ApiResult {
    let p = stored(&state, &source, &id)?;
    ok(render::report(&evaluate(&state.snapshot, p, &state.eval)))
}

async fn suggest(State(state): Shared, Query(params): Query<HashMap<String, String>>) -> ApiResult {
    let kind: FieldKind = param(&params, "kind")?.parse().map_err(|e: String| ApiError::bad_request("bad_kind", e))?;
    let q = param(&params, "q")?;
    let analysis = analyze(&state.snapshot, kind, q, &state.eval.match_params)
        .map_err(|e| ApiError::bad_request("empty_query", e.to_string()))?;
    ok(render::suggestions(&analysis))
}

async fn config(State(state): Shared) -> ApiResult {
    ok(render::config(&state.config))
}

async fn unknown_api_route() -> ApiError {
    ApiError::not_found("no such endpoint")
}

pub fn router(state: Arc<AppState>) -> Router {
    let api = Router::new()
        .route("/health", get(health))
        .route("/search", get(search))
        .route("/profiles/{source}/{id}", get(profile))
        .route("/evaluate", post(evaluate_posted))
        .route("/evaluate/{source}/{id}", get(evaluate_stored))
        .route("/suggest", get(suggest))
        .route("/config", get(config))
        .fallback(unknown_api_route);
    let static_dir = state.config.static_dir.clone();
    let app = Router::new().nest("/api", api).with_state(state);
    match static_dir {
        Some(dir) => app.fallback_service(ServeDir::new(dir)),
        None => app.fallback(unknown_api_route),
    }
}

/// Serves until the process receives Ctrl-C.
pub async fn serve(state: Arc<AppState>, listener: tokio::net::TcpListener) -> std::io::Result<()> {
    let addr = listener.local_addr()?;
    tracing::info!(%addr, profiles = state.snapshot.profile_count(), "serving");
    axum::serve(listener, router(state))
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await
}
