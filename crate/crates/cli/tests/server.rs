use std::path::Path;

use axum::body::Body;
use axum::http::{Request, StatusCode};
use axum::Router;
use gentzen_cli::server::{router, AppState};
use gentzen_core::fol::parse_sentence;
use gentzen_core::game::{GameState, Move};
use http_body_util::BodyExt;
use serde_json::{json, Value};
use tower::ServiceExt;

fn app() -> Router {
    router(AppState::default(), Path::new(concat!(env!("CARGO_MANIFEST_DIR"), "/tests/static")))
}

async fn call(app: &Router, method: &str, uri: &str, body: Option<Value>) -> (StatusCode, Value) {
    let req = Request::builder().method(method).uri(uri).header("content-type", "application/json");
    let req = req.body(body.map_or(Body::empty(), |b| Body::from(b.to_string()))).unwrap();
    let res = app.clone().oneshot(req).await.unwrap();
    let status = res.status();
    let bytes = res.into_body().collect().await.unwrap().to_bytes();
    let value = serde_json::from_slice(&bytes).unwrap_or(Value::String(String::from_utf8_lossy(&bytes).into()));
    (status, value)
}

async fn create(app: &Router, sentence: &str, bound: u64) -> (u64, Value) {
    let (status, body) = call(app, "POST", "/api/game", Some(json!({ "sentence": sentence, "bound": bound }))).await;
    assert_eq!(status, StatusCode::OK, "{body}");
    (body["game_id"].as_u64().unwrap(), body["state"].clone())
}

async fn play(app: &Router, id: u64, mv: Value) -> (StatusCode, Value) {
    call(app, "POST", &format!("/api/game/{id}/move"), Some(json!({ "move": mv }))).await
}

#[tokio::test]
async fn witness_one_wins() {
    let app = app();
    let (id, state) = create(&app, "exists x. x + x = SS0", 2).await;
    assert_eq!(state["status"]["result"], "in_progress");
    assert_eq!(state["board"][0]["text"], "exists x. ((x + x) = SS0)");
    // ω^0 for an atomic body
    assert_eq!(state["board"][0]["degree"], "1");
    assert_eq!(state["legal_moves"].as_array().unwrap().len(), 3);
    let (status, state) = play(&app, id, json!({ "kind": "pick_witness", "index": 0, "witness": 1 })).await;
    assert_eq!(status, StatusCode::OK, "{state}");
    assert_eq!(state["status"], json!({ "result": "proponent_win", "index": 1 }));
    assert_eq!(state["legal_moves"], json!([]));
    assert_eq!(state["history"], json!(["proponent: witness 0 1"]));
    let (status, _) = play(&app, id, json!({ "kind": "pick_witness", "index": 0, "witness": 0 })).await;
    assert_eq!(status, StatusCode::CONFLICT);
}

#[tokio::test]
async fn witness_above_bound_conflicts() {
    let app = app();
    let (id, _) = create(&app, "exists x. x + x = SS0", 2).await;
    let (status, body) = play(&app, id, json!({ "kind": "pick_witness", "index": 0, "witness": 5 })).await;
    assert_eq!(status, StatusCode::CONFLICT);
    assert!(body["error"].as_str().unwrap().contains("exceeds the bound"), "{body}");
    let (_, state) = call(&app, "GET", &format!("/api/game/{id}"), None).await;
    assert_eq!(state["version"], 0);
}

#[tokio::test]
async fn engine_answers_a_conjunction() {
    let app = app();
    let (id, _) = create(&app, "S0 = 0 & 0 = 0", 1).await;
    let (status, state) = play(&app, id, json!({ "kind": "point_at", "index": 0 })).await;
    assert_eq!(status, StatusCode::OK, "{state}");
    // the false conjunct leaves the proponent without a reduction
    assert_eq!(state["board"], json!([{ "index": 0, "text": "(S0 = 0)", "degree": "0", "degree_brackets": "[]" }]));
    assert_eq!(state["history"], json!(["proponent: point 0", "adversary: answer left"]));
    assert_eq!(state["turn"], "proponent");
    assert_eq!(state["status"]["result"], "proponent_stuck");
}

#[tokio::test]
async fn hints() {
    let app = app();
    let (id, _) = create(&app, "S0=S0", 1).await;
    let (_, hint) = call(&app, "GET", &format!("/api/game/{id}/hint"), None).await;
    assert_eq!(hint["text"], "claim win at index 0");
    assert_eq!(hint["hint"], "claim_win");
    let (id, _) = create(&app, "0 = S0", 1).await;
    let (_, hint) = call(&app, "GET", &format!("/api/game/{id}/hint"), None).await;
    assert_eq!(hint["text"], "no reduction");
    let (id, _) = create(&app, "exists x. x + x = SS0", 2).await;
    let (_, hint) = call(&app, "GET", &format!("/api/game/{id}/hint"), None).await;
    assert_eq!(hint["text"], "play witness 0 1");
    assert_eq!(hint["mv"], json!({ "kind": "pick_witness", "index": 0, "witness": 1 }));
}

#[tokio::test]
async fn errors() {
    let app = app();
    let (status, _) = call(&app, "GET", "/api/game/99", None).await;
    assert_eq!(status, StatusCode::NOT_FOUND);
    let (status, _) = play(&app, 99, json!({ "kind": "point_at", "index": 0 })).await;
    assert_eq!(status, StatusCode::NOT_FOUND);
    let (status, body) = call(&app, "POST", "/api/game", Some(json!({ "sentence": "0 = ", "bound": 1 }))).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert!(body["error"].is_string());
    let (status, _) = call(&app, "POST", "/api/game", Some(json!({ "sentence": "x = 0", "bound": 1 }))).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    let (status, _) = call(&app, "POST", "/api/game", Some(json!({ "sentence": "0 = 0", "bound": 1000 }))).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    let (id, _) = create(&app, "0 = 0 | 0 = S0", 1).await;
    let (status, _) = play(&app, id, json!({ "kind": "answer", "choice": "left" })).await;
    assert_eq!(status, StatusCode::CONFLICT);
}

#[tokio::test]
async fn stale_versions_conflict() {
    let app = app();
    let (id, _) = create(&app, "(0 = S0 | 0 = SS0) | S0 = S0", 1).await;
    let mv = json!({ "kind": "pick_or_left", "index": 0 });
    let (status, state) =
        call(&app, "POST", &format!("/api/game/{id}/move"), Some(json!({ "move": mv, "version": 0 }))).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(state["version"], 1);
    let (status, body) =
        call(&app, "POST", &format!("/api/game/{id}/move"), Some(json!({ "move": mv, "version": 0 }))).await;
    assert_eq!(status, StatusCode::CONFLICT);
    assert!(body["error"].as_str().unwrap().starts_with("stale view"));
}

/// The server offers exactly the engine's legal moves and accepts each of them.
#[tokio::test]
async fn legality_matches_the_engine() {
    let sentences = [
        "exists x. x + x = SS0",
        "forall x. (x = 0 | exists y. x = Sy)",
        "(0 = S0 & S0 > 0) | exists z. z * z = SSSS0",
        "forall x. forall y. (x + y = y + x)",
    ];
    let app = app();
    for text in sentences {
        let engine = GameState::new([parse_sentence(text).unwrap()], 2).unwrap();
        let (id, state) = create(&app, text, 2).await;
        let offered: Vec<Move> = state["legal_moves"]
            .as_array()
            .unwrap()
            .iter()
            .map(|m| serde_json::from_value(m["move"].clone()).unwrap())
            .collect();
        assert_eq!(offered, engine.legal_moves(), "{text}");
        for mv in &offered {
            let (fresh, _) = create(&app, text, 2).await;
            let (status, body) = play(&app, fresh, serde_json::to_value(mv).unwrap()).await;
            assert_eq!(status, StatusCode::OK, "{text} {mv}: {body}");
        }
        for bad in [
            json!({ "kind": "pick_or_left", "index": 7 }),
            json!({ "kind": "pick_witness", "index": 0, "witness": 3 }),
            json!({ "kind": "point_at", "index": 1 }),
        ] {
            let mv: Move = serde_json::from_value(bad.clone()).unwrap();
            let (status, _) = play(&app, id, bad).await;
            let expected = if engine.legal_moves().contains(&mv) { StatusCode::OK } else { StatusCode::CONFLICT };
            assert_eq!(status, expected, "{text} {mv}");
        }
    }
}

#[tokio::test]
async fn serves_static_files() {
    let app = app();
    let (status, body) = call(&app, "GET", "/index.html", None).await;
    assert_eq!(status, StatusCode::OK);
    assert!(body.as_str().unwrap().contains("gentzen"));
    let (status, _) = call(&app, "GET", "/missing.js", None).await;
    assert_eq!(status, StatusCode::NOT_FOUND);
}
