//! HTTP wire protocol over [`SessionStore`].

use std::net::SocketAddr;
use std::sync::Arc;

use axum::extract::rejection::JsonRejection;
use axum::extract::{Path, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use tower_http::cors::CorsLayer;

use crate::report::MoveDocument;
use crate::session::{ErrorCode, NewGameRequest, ServiceError, SessionStore};

impl IntoResponse for ServiceError {
    fn into_response(self) -> Response {
        let status = match self.error_code {
            ErrorCode::IllegalMove => StatusCode::CONFLICT,
            ErrorCode::UnknownSession => StatusCode::NOT_FOUND,
            ErrorCode::Malformed => StatusCode::BAD_REQUEST,
            ErrorCode::SizeBound => StatusCode::UNPROCESSABLE_ENTITY,
        };
        (status, Json(self)).into_response()
    }
}

fn malformed(rejection: JsonRejection) -> ServiceError {
    ServiceError { error_code: ErrorCode::Malformed, message: rejection.body_text() }
}

type Shared = Arc<SessionStore>;

async fn new_game(State(store): State<Shared>, body: Result<Json<NewGameRequest>, JsonRejection>) -> Response {
    let result = body.map_err(malformed).and_then(|Json(req)| store.create(req));
    match result {
        Ok(r) => (StatusCode::CREATED, Json(r)).into_response(),
        Err(e) => e.into_response(),
    }
}

async fn game_state(State(store): State<Shared>, Path(id): Path<String>) -> Response {
    match store.state(&id) {
        Ok(r) => Json(r).into_response(),
        Err(e) => e.into_response(),
    }
}

async fn play_move(
    State(store): State<Shared>,
    Path(id): Path<String>,
    body: Result<Json<MoveDocument>, JsonRejection>,
) -> Response {
    let result = body.map_err(malformed).and_then(|Json(mv)| store.play(&id, &mv));
    match result {
        Ok(r) => Json(r).into_response(),
        Err(e) => e.into_response(),
    }
}

async fn advice(State(store): State<Shared>, Path(id): Path<String>) -> Response {
    match store.advice(&id) {
        Ok(r) => Json(r).into_response(),
        Err(e) => e.into_response(),
    }
}

pub fn router(store: Shared) -> Router {
    Router::new()
        .route("/api/games", post(new_game))
        .route("/api/games/{id}", get(game_state))
        .route("/api/games/{id}/moves", post(play_move))
        .route("/api/games/{id}/advice", get(advice))
        .layer(CorsLayer::permissive())
        .with_state(store)
}

pub async fn serve(port: u16, auto_reply: bool) -> std::io::Result<()> {
    let addr = SocketAddr::from(([127, 0, 0, 1], port));
    let listener = tokio::net::TcpListener::bind(addr).await?;
    eprintln!("listening on http://{}", listener.local_addr()?);
    axum::serve(listener, router(Arc::new(SessionStore::new(auto_reply)))).await
}
