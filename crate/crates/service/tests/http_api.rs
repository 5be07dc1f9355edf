use std::sync::Arc;

use axum::body::Body;
use axum::http::{Request, StatusCode};
use axum::Router;
use dpgame_core::board::new_game;
use dpgame_core::catalog::Catalog;
use dpgame_core::strategies::{choose_action, Policy};
use dpgame_service::http::router;
use dpgame_service::store::SessionStore;
use http_body_util::BodyExt;
use serde_json::{json, Value};
use tower::ServiceExt;

async fn call(app: &Router, method: &str, uri: &str, body: Option<Value>) -> (StatusCode, Value) {
    let request = Request::builder()
        .method(method)
        .uri(uri)
        .header("content-type", "application/json")
        .body(body.map_or_else(Body::empty, |b| Body::from(b.to_string())))
        .unwrap();
    let response = app.clone().oneshot(request).await.unwrap();
    let status = response.status();
    let bytes = response.into_body().collect().await.unwrap().to_bytes();
    let value = if bytes.is_empty() { Value::Null } else { serde_json::from_slice(&bytes).unwrap() };
    (status, value)
}

fn app() -> Router {
    router(Arc::new(SessionStore::in_memory()))
}

async fn create(app: &Router, body: Value) -> String {
    let (status, page) = call(app, "POST", "/sessions", Some(body)).await;
    assert_eq!(status, StatusCode::CREATED, "{page}");
    page["view"]["session_id"].as_str().unwrap().to_string()
}

async fn command(app: &Router, id: &str, body: Value) -> (StatusCode, Value) {
    call(app, "POST", &format!("/sessions/{id}/commands"), Some(body)).await
}

fn place(token: &str, region: &str, angle: Option<u8>) -> Value {
    let mut body = json!({ "type": "PlaceToken", "token": token, "region": region });
    if let Some(angle) = angle {
        body["opening_angle"] = json!(angle);
    }
    body
}

#[tokio::test]
async fn create_returns_an_open_session_with_one_event() {
    let app = app();
    let (status, page) =
        call(&app, "POST", "/sessions", Some(json!({ "attacker": "greedy", "defender": "human" }))).await;
    assert_eq!(status, StatusCode::CREATED);
    assert_eq!(page["events"].as_array().unwrap().len(), 1);
    assert_eq!(page["events"][0]["kind"], "GameCreated");
    assert_eq!(page["events"][0]["sequence"], 0);
    assert_eq!(page["view"]["status"], "open");
    assert_eq!(page["view"]["to_move"], "attacker");
    let palette = page["view"]["palette"].as_array().unwrap();
    assert_eq!(palette.len(), 26);
    assert!(palette.iter().all(|entry| entry["uses_left"] == 2));
    assert_eq!(page["view"]["board"].as_array().unwrap().len(), 25);
}

#[tokio::test]
async fn unknown_policy_is_a_bad_request() {
    let (status, body) = call(&app(), "POST", "/sessions", Some(json!({ "attacker": "PPO" }))).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert!(body["error"].as_str().unwrap().contains("unknown policy"), "{body}");
}

#[tokio::test]
async fn unknown_fields_are_rejected() {
    let (status, body) = call(&app(), "POST", "/sessions", Some(json!({ "atacker": "greedy" }))).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert!(body["error"].as_str().unwrap().contains("atacker"), "{body}");
}

#[tokio::test]
async fn session_ids_are_distinct_and_listed() {
    let app = app();
    let a = create(&app, json!({})).await;
    let b = create(&app, json!({})).await;
    assert_ne!(a, b);
    let (status, list) = call(&app, "GET", "/sessions", None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(list.as_array().unwrap().len(), 2);
}

#[tokio::test]
async fn defender_no_trust_answers_email_with_a_verdict() {
    let app = app();
    let id = create(&app, json!({ "attacker": "human", "defender": "human" })).await;
    let (status, _) = command(&app, &id, place("Email", "inner", Some(1))).await;
    assert_eq!(status, StatusCode::OK);
    let (status, page) = command(&app, &id, place("No trust", "center", None)).await;
    assert_eq!(status, StatusCode::OK, "{page}");
    let events = page["events"].as_array().unwrap();
    assert_eq!(events.len(), 2);
    assert_eq!(events[0]["kind"], "MovePlaced");
    assert_eq!(events[0]["payload"]["position"], 25);
    assert_eq!(events[1]["kind"], "VerdictIssued");
    let verdict = &events[1]["payload"];
    assert_eq!(verdict["iteration"], 1);
    assert_eq!(verdict["a_points"], 0);
    assert_eq!(verdict["d_points"], 1);
    assert_eq!(verdict["verdict"]["winner"], "defender");
    assert_eq!(verdict["verdict"]["comment"], "Never trust malicious emails");
    assert_eq!(page["view"]["last_verdict"], *verdict);
    assert_eq!(page["view"]["score"], json!({ "attacker": 0, "defender": 1 }));
}

#[tokio::test]
async fn occupied_center_is_rejected_without_an_event() {
    let app = app();
    let id = create(&app, json!({ "attacker": "human", "defender": "human" })).await;
    command(&app, &id, place("A1", "center", None)).await;
    let (_, before) = call(&app, "GET", &format!("/sessions/{id}"), None).await;
    let (status, body) = command(&app, &id, place("D5", "center", None)).await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
    assert_eq!(body["error"], "center occupied");
    let (_, after) = call(&app, "GET", &format!("/sessions/{id}"), None).await;
    assert_eq!(after, before);
    assert_eq!(after["view"]["last_sequence"], 1);
}

#[tokio::test]
async fn out_of_turn_and_wrong_seat_are_rejected() {
    let app = app();
    let id = create(&app, json!({ "attacker": "human", "defender": "greedy" })).await;
    let (status, body) = command(&app, &id, place("D5", "center", None)).await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
    assert!(body["error"].as_str().unwrap().starts_with("out of turn"), "{body}");
    let (status, _) = command(&app, &id, json!({ "type": "RequestAiMove" })).await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
}

#[tokio::test]
async fn ai_move_is_the_policy_choice() {
    let app = app();
    let id = create(&app, json!({ "attacker": "greedy", "defender": "human" })).await;
    let (status, page) = command(&app, &id, json!({ "type": "RequestAiMove" })).await;
    assert_eq!(status, StatusCode::OK);
    let catalog = Catalog::default_catalog();
    let state = new_game(&Default::default()).unwrap();
    let expected = choose_action(&Policy::Greedy, &state, catalog.matchup_matrix()).unwrap();
    let placed = &page["events"][0]["payload"];
    assert_eq!(placed["action"], serde_json::to_value(expected).unwrap());
    assert_eq!(placed["policy"], "greedy");
}

#[tokio::test]
async fn hint_suggests_network_monitoring_against_phone() {
    let app = app();
    let id = create(&app, json!({ "attacker": "human", "defender": "human" })).await;
    command(&app, &id, place("Phone", "inner", Some(1))).await;
    let (status, hint) = call(&app, "GET", &format!("/sessions/{id}/hint"), None).await;
    assert_eq!(status, StatusCode::OK, "{hint}");
    assert_eq!(hint["role"], "defender");
    assert_eq!(hint["action"]["token"], "D2");
    assert_eq!(hint["label"], "Network monitoring");
    assert_eq!(hint["target"]["token"], "A2");
    assert_eq!(hint["target"]["verdict"]["comment"], "Secure network monitored");
    assert_eq!(hint["points"], 1);
    let (_, again) = call(&app, "GET", &format!("/sessions/{id}/hint"), None).await;
    assert_eq!(again, hint);
}

#[tokio::test]
async fn hint_on_an_empty_board_is_legal_and_can_be_disabled() {
    let app = app();
    let id = create(&app, json!({ "attacker": "human", "defender": "greedy" })).await;
    let (status, hint) = call(&app, "GET", &format!("/sessions/{id}/hint"), None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(hint["role"], "attacker");
    let off = create(&app, json!({ "attacker": "human", "hints": false })).await;
    let (status, _) = call(&app, "GET", &format!("/sessions/{off}/hint"), None).await;
    assert_eq!(status, StatusCode::FORBIDDEN);
}

#[tokio::test]
async fn polling_since_returns_the_tail() {
    let app = app();
    let id = create(&app, json!({ "attacker": "human", "defender": "human" })).await;
    command(&app, &id, place("Email", "inner", Some(1))).await;
    command(&app, &id, place("No trust", "center", None)).await;
    let (_, full) = call(&app, "GET", &format!("/sessions/{id}?since=0"), None).await;
    let (_, tail) = call(&app, "GET", &format!("/sessions/{id}?since=2"), None).await;
    let all = full["events"].as_array().unwrap();
    assert_eq!(all.len(), 4);
    assert_eq!(tail["events"].as_array().unwrap(), &all[2..]);
    assert_eq!(tail["view"], full["view"]);
    let (_, none) = call(&app, "GET", &format!("/sessions/{id}?since=4"), None).await;
    assert!(none["events"].as_array().unwrap().is_empty());
}

#[tokio::test]
async fn stale_sequence_is_a_conflict() {
    let app = app();
    let id = create(&app, json!({ "attacker": "human", "defender": "human" })).await;
    let mut body = place("Email", "inner", Some(1));
    body["last_seen_sequence"] = json!(0);
    assert_eq!(command(&app, &id, body.clone()).await.0, StatusCode::OK);
    let mut second = place("No trust", "center", None);
    second["last_seen_sequence"] = json!(0);
    let (status, error) = command(&app, &id, second.clone()).await;
    assert_eq!(status, StatusCode::CONFLICT, "{error}");
    second["last_seen_sequence"] = json!(1);
    assert_eq!(command(&app, &id, second).await.0, StatusCode::OK);
}

#[tokio::test]
async fn resign_finishes_and_later_commands_conflict() {
    let app = app();
    let id = create(&app, json!({ "attacker": "human", "defender": "greedy" })).await;
    let (status, page) = command(&app, &id, json!({ "type": "Resign" })).await;
    assert_eq!(status, StatusCode::OK);
    let ended = &page["events"][0];
    assert_eq!(ended["kind"], "GameEnded");
    assert_eq!(ended["payload"]["winner"], "defender");
    assert_eq!(page["view"]["status"], "finished");
    let (status, _) = command(&app, &id, json!({ "type": "RequestAiMove" })).await;
    assert_eq!(status, StatusCode::CONFLICT);
    let (status, report) = call(&app, "GET", &format!("/sessions/{id}/report"), None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(report["status"], "finished");
}

#[tokio::test]
async fn full_ai_game_over_http() {
    let app = app();
    let id = create(&app, json!({ "attacker": "greedy", "defender": "random:3" })).await;
    let mut finished = false;
    for _ in 0..25 {
        let (status, page) = command(&app, &id, json!({ "type": "RequestAiMove" })).await;
        assert_eq!(status, StatusCode::OK);
        if page["view"]["status"] == "finished" {
            finished = true;
            break;
        }
    }
    assert!(finished);
    let (_, report) = call(&app, "GET", &format!("/sessions/{id}/report"), None).await;
    let (_, page) = call(&app, "GET", &format!("/sessions/{id}"), None).await;
    let events = page["events"].as_array().unwrap();
    let last = events.last().unwrap();
    assert_eq!(last["kind"], "GameEnded");
    assert_eq!(last["payload"]["report"], report["report"]);
    for (i, event) in events.iter().enumerate() {
        assert_eq!(event["sequence"], i as u64);
    }
}

#[tokio::test]
async fn catalog_and_unknown_session() {
    let app = app();
    let (status, catalog) = call(&app, "GET", "/catalog", None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(catalog["psych_factors"].as_array().unwrap().len(), 10);
    let (status, body) = call(&app, "GET", "/sessions/nope", None).await;
    assert_eq!(status, StatusCode::NOT_FOUND);
    assert!(body["error"].as_str().unwrap().contains("nope"));
}
