//! Stateless JSON API over the classifier and engine.
//!
//! `POST /api/classify` and `POST /api/bestmove` take a [`ClassifyRequest`]
//! body; `GET /api/health` reports the build. Clients own the game state.

use axum::body::Bytes;
use axum::http::{HeaderValue, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::Serialize;
use serde_json::Value;
use tower_http::cors::{AllowOrigin, CorsLayer};
use tower_http::trace::TraceLayer;

use crate::classify::{classify, is_singular, outcome, ClassificationDetail};
use crate::game::{GameSpec, Outcome, Play, Variant};
use crate::position::Position;
use crate::strategy::{apply_move, best_move, legal_move_count, winning_moves};

/// Largest number of legal moves a single request may ask the engine to scan.
pub const MAX_MOVE_SCAN: u64 = 1 << 20;

/// A validated request body.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassifyRequest {
    pub spec: GameSpec,
    pub position: Position,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ApiError {
    #[serde(skip)]
    pub status: StatusCode,
    pub code: &'static str,
    pub message: String,
}

impl ApiError {
    fn bad_request(code: &'static str, message: impl Into<String>) -> Self {
        ApiError {
            status: StatusCode::BAD_REQUEST,
            code,
            message: message.into(),
        }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.status, Json(&self)).into_response()
    }
}

impl ClassifyRequest {
    /// Parses and validates a JSON body. Heaps may come in any order.
    pub fn from_json(body: &[u8]) -> Result<Self, ApiError> {
        let value: Value = serde_json::from_slice(body)
            .map_err(|e| ApiError::bad_request("malformed_body", format!("invalid JSON: {e}")))?;
        let obj = value
            .as_object()
            .ok_or_else(|| ApiError::bad_request("malformed_body", "body must be a JSON object"))?;

        let variant = match obj.get("variant").and_then(Value::as_str) {
            Some("bounded") => {
                let k = obj
                    .get("k")
                    .filter(|v| !v.is_null())
                    .ok_or_else(|| ApiError::bad_request("missing_k", "k is required for the bounded variant"))?;
                match k.as_u64() {
                    Some(k) if k >= 1 => Variant::Bounded(k),
                    _ => return Err(ApiError::bad_request("invalid_k", format!("k must be a positive integer, got {k}"))),
                }
            }
            Some("greedy") => Variant::Greedy,
            _ => {
                return Err(ApiError::bad_request(
                    "invalid_variant",
                    "variant must be \"bounded\" or \"greedy\"",
                ))
            }
        };
        let play = match obj.get("play").and_then(Value::as_str) {
            Some("normal") => Play::Normal,
            Some("misere") => Play::Misere,
            _ => return Err(ApiError::bad_request("invalid_play", "play must be \"normal\" or \"misere\"")),
        };
        let heaps = obj
            .get("heaps")
            .and_then(Value::as_array)
            .ok_or_else(|| ApiError::bad_request("invalid_heap", "heaps must be an array"))?
            .iter()
            .enumerate()
            .map(|(i, h)| {
                h.as_u64().ok_or_else(|| {
                    ApiError::bad_request("invalid_heap", format!("heap {i} must be a non-negative integer, got {h}"))
                })
            })
            .collect::<Result<Vec<u64>, _>>()?;

        Ok(ClassifyRequest {
            spec: GameSpec { variant, play },
            position: Position::from_heaps(heaps),
        })
    }

    fn check_search_size(&self) -> Result<(), ApiError> {
        let moves = legal_move_count(&self.spec, &self.position);
        if moves > MAX_MOVE_SCAN {
            return Err(ApiError {
                status: StatusCode::UNPROCESSABLE_ENTITY,
                code: "search_too_large",
                message: format!("{moves} legal moves exceeds the scan limit of {MAX_MOVE_SCAN}"),
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ClassifyResponse {
    pub outcome: Outcome,
    pub normalized_heaps: Position,
    pub detail: ClassificationDetail,
    pub singular: bool,
    pub winning_moves: Vec<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum NoMoveReason {
    PPosition,
    Immobile,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct BestMoveResponse {
    pub remove: Option<u64>,
    pub resulting: Option<Position>,
    pub resulting_outcome: Option<Outcome>,
    pub no_move_reason: Option<NoMoveReason>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HealthResponse {
    pub status: &'static str,
    pub service: &'static str,
    pub version: &'static str,
}

pub fn handle_classify(req: &ClassifyRequest) -> Result<ClassifyResponse, ApiError> {
    req.check_search_size()?;
    let detail = classify(&req.spec, &req.position);
    Ok(ClassifyResponse {
        outcome: detail.outcome,
        normalized_heaps: req.position.clone(),
        singular: is_singular(req.spec.variant, &req.position),
        winning_moves: winning_moves(&req.spec, &req.position).iter().map(|t| t.remove()).collect(),
        detail,
    })
}

pub fn handle_bestmove(req: &ClassifyRequest) -> Result<BestMoveResponse, ApiError> {
    req.check_search_size()?;
    let response = match best_move(&req.spec, &req.position) {
        Some(t) => {
            let next = apply_move(&req.position, t).expect("engine moves are legal");
            BestMoveResponse {
                remove: Some(t.remove()),
                resulting_outcome: Some(outcome(&req.spec, &next)),
                resulting: Some(next),
                no_move_reason: None,
            }
        }
        None => BestMoveResponse {
            remove: None,
            resulting: None,
            resulting_outcome: None,
            no_move_reason: Some(if req.position.has_stones() {
                NoMoveReason::PPosition
            } else {
                NoMoveReason::Immobile
            }),
        },
    };
    Ok(response)
}

pub fn handle_health() -> HealthResponse {
    HealthResponse {
        status: "ok",
        service: env!("CARGO_PKG_NAME"),
        version: env!("CARGO_PKG_VERSION"),
    }
}

async fn classify_route(body: Bytes) -> Result<Json<ClassifyResponse>, ApiError> {
    let req = ClassifyRequest::from_json(&body)?;
    handle_classify(&req).map(Json)
}

async fn bestmove_route(body: Bytes) -> Result<Json<BestMoveResponse>, ApiError> {
    let req = ClassifyRequest::from_json(&body)?;
    handle_bestmove(&req).map(Json)
}

async fn health_route() -> Json<HealthResponse> {
    Json(handle_health())
}

async fn not_found() -> ApiError {
    ApiError {
        status: StatusCode::NOT_FOUND,
        code: "not_found",
        message: "no such route".into(),
    }
}

/// Which origins may call the API from a browser.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub enum CorsPolicy {
    #[default]
    Any,
    Origins(Vec<String>),
}

pub fn router(cors: &CorsPolicy) -> Router {
    let cors_layer = match cors {
        CorsPolicy::Any => CorsLayer::permissive(),
        CorsPolicy::Origins(list) => {
            let origins: Vec<HeaderValue> = list.iter().filter_map(|o| o.parse().ok()).collect();
            CorsLayer::new()
                .allow_origin(AllowOrigin::list(origins))
                .allow_methods(tower_http::cors::Any)
                .allow_headers(tower_http::cors::Any)
        }
    };
    Router::new()
        .route("/api/classify", post(classify_route))
        .route("/api/bestmove", post(bestmove_route))
        .route("/api/health", get(health_route))
        .fallback(not_found)
        .layer(cors_layer)
        .layer(TraceLayer::new_for_http())
}

/// Serves the API on `listener` until Ctrl-C.
pub async fn serve(listener: tokio::net::TcpListener, cors: &CorsPolicy) -> std::io::Result<()> {
    axum::serve(listener, router(cors))
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
            tracing::info!("shutting down");
        })
        .await
}
