use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use conhom::io::parse_graph6;

fn root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn conhom(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_conhom"))
        .arg("--fixtures")
        .arg(root().join("fixtures"))
        .args(args)
        .output()
        .unwrap()
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("conhom-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn check_petersen_matches_golden() {
    let out = conhom(&["check", "petersen", "--k", "4"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), golden("check-petersen.json"));
}

#[test]
fn failed_level_exits_one_with_witness() {
    let out = conhom(&["check", "icosahedron", "--k", "4"]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text, golden("check-icosahedron-k4.json"));
    let json: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(json["census"]["largest_verified"], 3);
    assert!(json["verdicts"][3]["witness"]["sigma"].is_array());
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(conhom(&["check", "gq-pointgraph", "q5minus", "7"]).status.code(), Some(2));
    assert_eq!(conhom(&["check", "no-such-graph"]).status.code(), Some(2));
    assert_eq!(conhom(&["check"]).status.code(), Some(2));
    assert_eq!(conhom(&["check", "petersen", "--mode", "sideways"]).status.code(), Some(2));
}

#[test]
fn missing_inputs_exit_three() {
    assert_eq!(conhom(&["check", "nowhere/graph.g6"]).status.code(), Some(3));
    assert_eq!(conhom(&["check", "petersen", "--group", "nowhere.gens"]).status.code(), Some(3));
    assert_eq!(conhom(&["reproduce", "--claims", "nowhere.json"]).status.code(), Some(3));
}

#[test]
fn wrong_claim_exits_one() {
    let path = scratch("wrong.json");
    let claims = r#"{"version":1,"claims":[
        {"id":"petersen","graph":"petersen","expect":[{"k":4,"pass":true}],"tag":"core"},
        {"id":"schlafli","graph":"schlafli","expect":[{"k":5,"pass":true}],"tag":"core"}]}"#;
    std::fs::write(&path, claims).unwrap();
    let out = conhom(&["reproduce", "--claims", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let table = String::from_utf8(out.stdout).unwrap();
    assert!(table.lines().any(|l| l.starts_with("schlafli") && l.contains("MISMATCH")), "{table}");
}

#[test]
fn construct_round_trips() {
    let out = conhom(&["construct", "gq-pointgraph", "w3", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let g = parse_graph6(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert_eq!((g.order(), g.edge_count()), (15, 45));
    let path = scratch("w32.edges");
    let out = conhom(&["construct", "gq-pointgraph", "w3", "2", "--format", "edges", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let out = conhom(&["report", path.to_str().unwrap()]);
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["report"]["parameters"]["srg"]["mu"], 3);
}

#[test]
fn aut_generators_feed_check() {
    let gens = scratch("clebsch.gens");
    let out = conhom(&["aut", "clebsch", "--out", gens.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["order"], "1920");
    let out = conhom(&["check", "clebsch", "--k", "3", "--group", gens.to_str().unwrap()]);
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["group"]["order"], "1920");
    assert_eq!(json["group"]["trust"], "subgroup-only");
}

#[test]
fn disconnected_report_has_components() {
    let out = conhom(&["report", "disjoint-union", "2", "petersen"]);
    assert_eq!(out.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["components"].as_array().unwrap().len(), 2);
    assert_eq!(json["components"][1]["report"]["parameters"]["srg"]["v"], 10);
}

#[test]
fn fixture_group_is_trusted() {
    let gens = root().join("fixtures/hoffman-singleton.gens");
    let out = conhom(&["check", "hoffman-singleton", "--k", "6", "--group", gens.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let json: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["group"]["trust"], "fixture-trusted-aut");
    assert_eq!(json["census"]["largest_verified"], 5);
    assert_eq!(json["census"]["negative_conclusive"], true);
}

#[test]
fn timeout_is_recorded_not_a_mismatch() {
    let path = scratch("slow.json");
    let claims = r#"{"version":1,"claims":[
        {"id":"slow","graph":"gq-pointgraph q5minus 4","expect":[{"k":5,"pass":false}],"tag":"core"}]}"#;
    std::fs::write(&path, claims).unwrap();
    let log = scratch("slow-log.json");
    let out = conhom(&["reproduce", "--claims", path.to_str().unwrap(), "--timeout", "0", "--log", log.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(log).unwrap()).unwrap();
    assert_eq!(json["results"][0]["status"], "timeout");
}
