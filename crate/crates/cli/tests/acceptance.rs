//! Acceptance run for the command line and the game API: one PASS/FAIL line each.

use std::path::Path;
use std::process::Command;

use axum::body::Body;
use axum::http::{Request, StatusCode};
use gentzen_cli::server::{router, AppState};
use http_body_util::BodyExt;
use serde_json::{json, Value};
use tower::ServiceExt;

fn gentzen(args: &[&str]) -> (String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_gentzen")).args(args).output().expect("binary runs");
    (String::from_utf8_lossy(&out.stdout).trim_end().to_string(), out.status.code().unwrap_or(-1))
}

fn cli_case(args: &[&str], want_stdout: &str, want_code: i32) -> Result<String, String> {
    let (stdout, code) = gentzen(args);
    let first = stdout.lines().next().unwrap_or("");
    if first == want_stdout && code == want_code {
        Ok(format!("{first:?} exit {code}"))
    } else {
        Err(format!("got {first:?} exit {code}, want {want_stdout:?} exit {want_code}"))
    }
}

async fn call(app: &axum::Router, method: &str, uri: &str, body: Option<Value>) -> (StatusCode, Value) {
    let req = Request::builder()
        .method(method)
        .uri(uri)
        .header("content-type", "application/json")
        .body(body.map_or(Body::empty(), |b| Body::from(b.to_string())))
        .unwrap();
    let res = app.clone().oneshot(req).await.unwrap();
    let status = res.status();
    let bytes = res.into_body().collect().await.unwrap().to_bytes();
    (status, serde_json::from_slice(&bytes).unwrap_or(Value::Null))
}

async fn server_cases() -> Vec<(&'static str, Result<String, String>)> {
    let app = router(AppState::default(), Path::new("."));
    let new = json!({ "sentence": "exists x. x + x = SS0", "bound": 2 });
    let (_, created) = call(&app, "POST", "/api/game", Some(new.clone())).await;
    let id = created["game_id"].as_u64().unwrap_or(0);
    let (status, state) = call(
        &app,
        "POST",
        &format!("/api/game/{id}/move"),
        Some(json!({ "move": { "kind": "pick_witness", "index": 0, "witness": 1 } })),
    )
    .await;
    let win = if status == StatusCode::OK && state["status"]["result"] == "proponent_win" {
        Ok(format!("status {}", state["status"]))
    } else {
        Err(format!("{status} {state}"))
    };

    let (_, created) = call(&app, "POST", "/api/game", Some(new)).await;
    let id = created["game_id"].as_u64().unwrap_or(0);
    let (status, body) = call(
        &app,
        "POST",
        &format!("/api/game/{id}/move"),
        Some(json!({ "move": { "kind": "pick_witness", "index": 0, "witness": 5 } })),
    )
    .await;
    let conflict =
        if status == StatusCode::CONFLICT { Ok(format!("409 {}", body["error"])) } else { Err(status.to_string()) };

    let (_, created) = call(&app, "POST", "/api/game", Some(json!({ "sentence": "S0=S0", "bound": 1 }))).await;
    let id = created["game_id"].as_u64().unwrap_or(0);
    let (_, hint) = call(&app, "GET", &format!("/api/game/{id}/hint"), None).await;
    let claim =
        if hint["text"] == "claim win at index 0" { Ok(hint["text"].to_string()) } else { Err(hint.to_string()) };

    let (status, _) = call(&app, "GET", "/api/game/4242", None).await;
    let missing = if status == StatusCode::NOT_FOUND { Ok("404".to_string()) } else { Err(status.to_string()) };

    vec![
        ("serve-witness-wins", win),
        ("serve-witness-above-bound", conflict),
        ("serve-hint-claim-win", claim),
        ("serve-unknown-id", missing),
    ]
}

fn main() {
    let prime7 = "(SSSSSSS0 > S0) & forall x. forall y. (!(x*y = SSSSSSS0) | (x = S0) | (y = S0))";
    let mut results = vec![
        ("ordinal-compare", cli_case(&["ordinal", "compare", "[[[],[]]]", "[[[]],[[]]]"], "GT", 0)),
        ("ordinal-cnf", cli_case(&["ordinal", "cnf", "[[[]],[[]]]"], "ω·2", 0)),
        ("ordinal-validate", cli_case(&["ordinal", "validate", "[[],[[]]]"], "invalid", 1)),
        ("formula-eval-prime", cli_case(&["formula", "eval", "--bound", "8", prime7], "TRUE@8", 0)),
        (
            "game-synth-no-reduction",
            cli_case(&["game", "synth", "--bound", "1", "--sentence", "0 = S0"], "NO-REDUCTION", 0),
        ),
        ("proof-search-trivial", cli_case(&["proof", "search", "--max-length", "5"], "CON-VERIFIED length<5", 0)),
    ];
    let runtime = tokio::runtime::Builder::new_current_thread().enable_all().build().unwrap();
    results.extend(runtime.block_on(server_cases()));

    let mut failed = 0;
    for (name, result) in results {
        match result {
            Ok(detail) => println!("PASS {name} {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL {name} {detail}");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
