//! HTTP API behaviour and byte parity with the command line.

mod common;

use common::{run_ok, server, workspace};
use reqwest::StatusCode;

async fn get(path: &str) -> (StatusCode, String) {
    let resp = reqwest::get(format!("{}{path}", server())).await.unwrap();
    let status = resp.status();
    assert_eq!(resp.headers()["content-type"], "application/json", "{path}");
    (status, resp.text().await.unwrap())
}

async fn post(path: &str, body: impl Into<reqwest::Body>) -> (StatusCode, String) {
    let resp = reqwest::Client::new().post(format!("{}{path}", server())).body(body).send().await.unwrap();
    (resp.status(), resp.text().await.unwrap())
}

fn json(body: &str) -> serde_json::Value {
    serde_json::from_str(body).unwrap()
}

fn snap() -> String {
    workspace().snapshot.display().to_string()
}

#[tokio::test]
async fn health_reports_profile_count() {
    let (status, body) = get("/api/health").await;
    assert_eq!(status, StatusCode::OK);
    let v = json(&body);
    assert_eq!(v["status"], "ok");
    assert_eq!(v["profiles"], 10000);
}

#[tokio::test]
async fn two_source_person_gives_two_tagged_matches() {
    let (status, body) = get("/api/search?first=Darren&last=Kwok").await;
    assert_eq!(status, StatusCode::OK);
    let v = json(&body);
    assert_eq!(v["count"], 2);
    let tags: Vec<&str> = v["matches"].as_array().unwrap().iter().map(|m| m["source"].as_str().unwrap()).collect();
    assert_eq!(tags, ["primary_network", "partner_platform"]);
}

#[tokio::test]
async fn suggest_master_payload() {
    let (status, body) = get("/api/suggest?kind=DegreeName&q=Master").await;
    assert_eq!(status, StatusCode::OK);
    let v = json(&body);
    let recs = v["recommendations"].as_array().unwrap();
    assert_eq!(recs[0]["surface"], "Master's degree");
    assert_eq!(recs[0]["support"], 1200);
    assert_eq!(recs[1]["surface"], "Master of Business Administration (MBA)");
    assert_eq!(recs[1]["support"], 1100);
    assert_eq!(v["flags"], serde_json::json!(["specificity"]));
}

#[tokio::test]
async fn error_statuses_and_codes() {
    let cases = [
        ("/api/profiles/primary_network/nobody", StatusCode::NOT_FOUND, "not_found"),
        ("/api/evaluate/partner_platform/nobody", StatusCode::NOT_FOUND, "not_found"),
        ("/api/profiles/myspace/1", StatusCode::BAD_REQUEST, "bad_source"),
        ("/api/search?first=Darren", StatusCode::BAD_REQUEST, "missing_parameter"),
        ("/api/suggest?kind=Colour&q=x", StatusCode::BAD_REQUEST, "bad_kind"),
        ("/api/suggest?kind=DegreeName", StatusCode::BAD_REQUEST, "missing_parameter"),
        ("/api/suggest?kind=DegreeName&q=%2E%2E%2E", StatusCode::BAD_REQUEST, "empty_query"),
        ("/api/nothing-here", StatusCode::NOT_FOUND, "not_found"),
    ];
    for (path, status, code) in cases {
        let (got, body) = get(path).await;
        assert_eq!(got, status, "{path}");
        assert_eq!(json(&body)["error"]["code"], code, "{path}");
    }
}

#[tokio::test]
async fn posted_bodies_map_to_400_and_422() {
    let (status, body) = post("/api/evaluate", "{ not json").await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert_eq!(json(&body)["error"]["code"], "malformed_document");

    let (status, _) = post("/api/evaluate", vec![0xff, 0xfe]).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);

    let missing_first = r#"{"schema_version":1,"id":"x","source":"primary_network","basic":{"last_name":"Ng"}}"#;
    let (status, body) = post("/api/evaluate", missing_first).await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
    assert_eq!(json(&body)["error"]["code"], "schema_violation");
}

#[tokio::test]
async fn evaluate_does_not_mutate_the_snapshot() {
    let (_, before) = get("/api/health").await;
    let doc = std::fs::read_to_string(&workspace().walkthrough).unwrap().replace("fx-walkthrough", "posted-only");
    let (status, report) = post("/api/evaluate", doc).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(json(&report)["profile"], "ad-hoc");
    let (_, after) = get("/api/health").await;
    assert_eq!(before, after);
    let (status, _) = get("/api/profiles/primary_network/posted-only").await;
    assert_eq!(status, StatusCode::NOT_FOUND);
}

#[tokio::test]
async fn api_and_cli_structured_output_are_byte_identical() {
    let ws = workspace();
    let walkthrough = ws.walkthrough.to_str().unwrap();
    let snap = snap();

    let (_, posted) = post("/api/evaluate", std::fs::read_to_string(walkthrough).unwrap()).await;
    let (_, stored) = get("/api/evaluate/primary_network/fx-walkthrough").await;
    let cli = run_ok(&["evaluate", "--snapshot", &snap, "--profile", walkthrough, "--format", "structured"]);
    assert_eq!(posted, cli);
    assert_eq!(stored, cli);

    for (kind, q, query) in [
        ("DegreeName", "Master", "kind=DegreeName&q=Master"),
        ("JobTitle", "software engr", "kind=JobTitle&q=software%20engr"),
        ("SchoolName", "raffles", "kind=SchoolName&q=raffles"),
    ] {
        let (_, api) = get(&format!("/api/suggest?{query}")).await;
        let cli = run_ok(&["suggest", "--snapshot", &snap, "--kind", kind, "--q", q, "--format", "structured"]);
        assert_eq!(api, cli, "{q}");
    }

    let (_, api) = get("/api/search?first=Wei%20Ming&last=Tan&institution=National%20University").await;
    let cli = run_ok(&[
        "search",
        "--snapshot",
        &snap,
        "--first",
        "Wei Ming",
        "--last",
        "Tan",
        "--institution",
        "National University",
        "--format",
        "structured",
    ]);
    assert_eq!(api, cli);

    let (_, api) = get("/api/profiles/partner_platform/fx-walkthrough-pp").await;
    let cli = run_ok(&["profile", "--snapshot", &snap, "--source", "partner_platform", "--id", "fx-walkthrough-pp"]);
    assert_eq!(api, cli);

    let (_, api) = get("/api/config").await;
    let cfg = ws.write("parity.toml", &format!("snapshot = {:?}\n", snap));
    let cli = run_ok(&["--config", cfg.to_str().unwrap(), "config"]);
    assert_eq!(api, cli);
    assert_eq!(json(&api)["snapshot"], snap);
}

#[tokio::test]
async fn concurrent_requests_agree() {
    let expected = get("/api/suggest?kind=OrganizationName&q=siemens").await.1;
    let tasks: Vec<_> =
        (0..32).map(|_| tokio::spawn(async { get("/api/suggest?kind=OrganizationName&q=siemens").await.1 })).collect();
    for t in tasks {
        assert_eq!(t.await.unwrap(), expected);
    }
}
