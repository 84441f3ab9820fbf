//! HTTP API for the game UI.
//!
//! | method | path                   | body                          |
//! |--------|------------------------|-------------------------------|
//! | POST   | `/api/game`            | `{"sentence", "bound"}`       |
//! | GET    | `/api/game/{id}`       |                               |
//! | POST   | `/api/game/{id}/move`  | `{"move", "version"?}`        |
//! | GET    | `/api/game/{id}/hint`  |                               |
//!
//! The human plays the proponent. After a proponent move that points at a
//! sentence, the engine answers at once with [`adversary_reply`]. Any other
//! path is served from the static UI directory.

use std::collections::HashMap;
use std::path::Path;
use std::sync::{Arc, Mutex};

use axum::extract::{Path as UrlPath, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use gentzen_core::fol::parse_sentence;
use gentzen_core::game::{adversary_reply, default_depth, degree, hint, GameState, Hint, Move, Player};
use serde::{Deserialize, Serialize};
use tower_http::services::ServeDir;

/// Largest bound accepted for a served game. Engine answers run a full
/// minimax search per move, which grows quickly with the bound.
pub const MAX_SERVED_BOUND: u64 = 16;

#[derive(Clone)]
struct Session {
    state: GameState,
    history: Vec<String>,
    version: u64,
}

#[derive(Clone, Default)]
pub struct AppState {
    sessions: Arc<Mutex<Sessions>>,
}

#[derive(Default)]
struct Sessions {
    next_id: u64,
    games: HashMap<u64, Session>,
}

impl AppState {
    /// Open a game and return its id.
    pub fn open(&self, sentence: &str, bound: u64) -> Result<u64, ApiError> {
        let s = parse_sentence(sentence).map_err(|e| ApiError::bad_request(e.to_string()))?;
        if bound > MAX_SERVED_BOUND {
            return Err(ApiError::bad_request(format!("bound {bound} exceeds the maximum {MAX_SERVED_BOUND}")));
        }
        let state = GameState::new([s], bound).map_err(|e| ApiError::bad_request(e.to_string()))?;
        let mut sessions = self.sessions.lock().expect("session lock");
        sessions.next_id += 1;
        let id = sessions.next_id;
        sessions.games.insert(id, Session { state, history: Vec::new(), version: 0 });
        Ok(id)
    }

    fn get(&self, id: u64) -> Result<Session, ApiError> {
        let sessions = self.sessions.lock().expect("session lock");
        sessions.games.get(&id).cloned().ok_or_else(|| ApiError::not_found(id))
    }
}

#[derive(Debug, thiserror::Error)]
#[error("{message}")]
pub struct ApiError {
    status: StatusCode,
    message: String,
}

impl ApiError {
    fn bad_request(message: String) -> Self {
        ApiError { status: StatusCode::BAD_REQUEST, message }
    }

    fn conflict(message: String) -> Self {
        ApiError { status: StatusCode::CONFLICT, message }
    }

    fn not_found(id: u64) -> Self {
        ApiError { status: StatusCode::NOT_FOUND, message: format!("no game with id {id}") }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.status, Json(serde_json::json!({ "error": self.message }))).into_response()
    }
}

#[derive(Serialize)]
pub struct SentenceView {
    pub index: usize,
    pub text: String,
    /// Degree in Cantor normal form.
    pub degree: String,
    pub degree_brackets: String,
}

#[derive(Serialize)]
pub struct MoveView {
    #[serde(rename = "move")]
    pub mv: Move,
    pub label: String,
}

#[derive(Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum Status {
    InProgress,
    ProponentWin { index: usize },
    ProponentStuck,
}

#[derive(Serialize)]
pub struct GameView {
    pub game_id: u64,
    /// Number of moves played; send it back with a move to detect stale views.
    pub version: u64,
    pub bound: u64,
    pub turn: Player,
    pub board: Vec<SentenceView>,
    pub legal_moves: Vec<MoveView>,
    pub history: Vec<String>,
    pub status: Status,
}

fn status(state: &GameState) -> Status {
    if state.turn() != Player::Proponent {
        return Status::InProgress;
    }
    match state.win_check() {
        Some(index) => Status::ProponentWin { index },
        None if state.legal_moves().is_empty() => Status::ProponentStuck,
        None => Status::InProgress,
    }
}

fn view(id: u64, session: &Session) -> GameView {
    let state = &session.state;
    let status = status(state);
    let legal_moves = match status {
        Status::InProgress => {
            state.legal_moves().into_iter().map(|mv| MoveView { mv, label: mv.to_string() }).collect()
        }
        _ => Vec::new(),
    };
    GameView {
        game_id: id,
        version: session.version,
        bound: state.bound(),
        turn: state.turn(),
        board: state
            .board()
            .iter()
            .enumerate()
            .map(|(index, s)| {
                let d = degree(s);
                SentenceView { index, text: s.to_string(), degree: d.to_cnf(), degree_brackets: d.to_brackets() }
            })
            .collect(),
        legal_moves,
        history: session.history.clone(),
        status,
    }
}

#[derive(Deserialize)]
struct NewGame {
    sentence: String,
    bound: u64,
}

#[derive(Serialize)]
struct Created {
    game_id: u64,
    state: GameView,
}

async fn create(State(app): State<AppState>, Json(req): Json<NewGame>) -> Result<Json<Created>, ApiError> {
    let id = app.open(&req.sentence, req.bound)?;
    let state = view(id, &app.get(id)?);
    Ok(Json(Created { game_id: id, state }))
}

async fn show(State(app): State<AppState>, UrlPath(id): UrlPath<u64>) -> Result<Json<GameView>, ApiError> {
    Ok(Json(view(id, &app.get(id)?)))
}

#[derive(Deserialize)]
struct MoveRequest {
    #[serde(rename = "move")]
    mv: Move,
    version: Option<u64>,
}

/// Apply the proponent's move, then let the engine answer if it is its turn.
fn advance(session: &Session, mv: Move) -> Result<Session, ApiError> {
    if !matches!(status(&session.state), Status::InProgress) {
        return Err(ApiError::conflict("the game is over".into()));
    }
    if mv.player() != Player::Proponent {
        return Err(ApiError::conflict("the engine plays the adversary".into()));
    }
    let mut next = session.clone();
    next.state = session.state.apply_move(mv).map_err(|e| ApiError::conflict(e.to_string()))?;
    if !session.state.legal_moves().contains(&mv) {
        return Err(ApiError::conflict(format!("{mv} is not a legal move")));
    }
    next.history.push(format!("proponent: {mv}"));
    while next.state.turn() == Player::Adversary {
        let reply = adversary_reply(&next.state).expect("a pending sentence always has an answer");
        next.state = next.state.apply_move(reply).expect("engine answers are legal");
        next.history.push(format!("adversary: {reply}"));
    }
    next.version += 1;
    Ok(next)
}

async fn make_move(
    State(app): State<AppState>,
    UrlPath(id): UrlPath<u64>,
    Json(req): Json<MoveRequest>,
) -> Result<Json<GameView>, ApiError> {
    let current = app.get(id)?;
    if let Some(v) = req.version {
        if v != current.version {
            return Err(ApiError::conflict(format!("stale view: version {v}, game is at {}", current.version)));
        }
    }
    let next = tokio::task::spawn_blocking(move || advance(&current, req.mv))
        .await
        .map_err(|e| ApiError { status: StatusCode::INTERNAL_SERVER_ERROR, message: e.to_string() })??;
    let mut sessions = app.sessions.lock().expect("session lock");
    let slot = sessions.games.get_mut(&id).ok_or_else(|| ApiError::not_found(id))?;
    if slot.version + 1 != next.version {
        return Err(ApiError::conflict("another move was played concurrently".into()));
    }
    *slot = next;
    Ok(Json(view(id, slot)))
}

#[derive(Serialize)]
struct HintView {
    #[serde(flatten)]
    hint: Hint,
    text: String,
}

async fn get_hint(State(app): State<AppState>, UrlPath(id): UrlPath<u64>) -> Result<Json<HintView>, ApiError> {
    let session = app.get(id)?;
    let h = tokio::task::spawn_blocking(move || hint(&session.state, default_depth(&session.state)))
        .await
        .map_err(|e| ApiError { status: StatusCode::INTERNAL_SERVER_ERROR, message: e.to_string() })?;
    Ok(Json(HintView { text: h.to_string(), hint: h }))
}

pub fn router(app: AppState, static_dir: &Path) -> Router {
    Router::new()
        .route("/api/game", post(create))
        .route("/api/game/{id}", get(show))
        .route("/api/game/{id}/move", post(make_move))
        .route("/api/game/{id}/hint", get(get_hint))
        .fallback_service(ServeDir::new(static_dir))
        .with_state(app)
}

pub async fn serve(app: AppState, port: u16, static_dir: &Path) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(("127.0.0.1", port)).await?;
    eprintln!("listening on http://{}", listener.local_addr()?);
    axum::serve(listener, router(app, static_dir)).await
}
