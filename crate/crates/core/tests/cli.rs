mod common;

use std::io::Write;
use std::process::{Command, Output, Stdio};

use common::*;
use serde_json::Value;

fn orbclose(args: &[&str], stdin: Option<&str>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_orbclose"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    if let Some(text) = stdin {
        child.stdin.take().unwrap().write_all(text.as_bytes()).unwrap();
    } else {
        drop(child.stdin.take());
    }
    child.wait_with_output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn check_reports_example_one_as_infinite() {
    let out = orbclose(&["check", &fixture_path("worked_example.json")], None);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    assert_eq!(report["tool"], "orbclose");
    assert_eq!(report["mode"], "projective");
    assert_eq!(report["verdict"]["finite"], false);
    assert_eq!(report["verdict"]["witness"]["face"], serde_json::json!([2, 3, 4]));
    assert_eq!(report["input_sha256"].as_str().unwrap().len(), 64);
}

#[test]
fn stdin_and_file_inputs_agree() {
    let text = fixture("worked_example.json");
    let from_file = orbclose(&["check", &fixture_path("worked_example.json")], None);
    let from_stdin = orbclose(&["check", "-"], Some(&text));
    assert_eq!(from_stdin.status.code(), Some(0));
    assert_eq!(from_file.stdout, from_stdin.stdout);
}

#[test]
fn both_routes_agree_on_example_one() {
    let out = orbclose(&["check", "--route", "both", "--modality", &fixture_path("worked_example.json")], None);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    assert_eq!(report["route"], "both");
    assert_eq!(report["modality"], 1);
}

#[test]
fn first_component_root_does_not_matter() {
    // the first component lies on no maximal admissible face
    let base: Value = serde_json::from_str(&fixture("worked_example.json")).unwrap();
    for root in ["0", "1", "-1", "5/3"] {
        let mut spec = base.clone();
        spec["components"][0]["roots"] = serde_json::json!([{"re": root, "im": "0", "mult": 1}]);
        let out = orbclose(&["check", "-"], Some(&spec.to_string()));
        assert_eq!(out.status.code(), Some(0));
        assert_eq!(json(&out)["verdict"]["finite"], false, "root {root}");
    }
}

#[test]
fn faces_lists_normals() {
    let out = orbclose(&["faces", &fixture_path("worked_example.json")], None);
    assert_eq!(out.status.code(), Some(0));
    let faces = json(&out)["faces"].clone();
    assert_eq!(faces[0]["indices"], serde_json::json!([1, 2]));
    assert_eq!(faces[0]["normal"], serde_json::json!(["4", "0", "-1"]));
    assert_eq!(faces[1]["normal"], serde_json::json!(["6", "-1", "-1"]));
}

#[test]
fn oracle_agrees_with_the_criterion() {
    let out = orbclose(&["oracle", "--sample-size", "6", &fixture_path("worked_example.json")], None);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    assert_eq!(report["agree"], true);
    assert_eq!(report["criterion_finite"], false);
}

#[test]
fn limit_accepts_an_inline_curve() {
    let curve = r#"{"r":[-1],"p":-1,"q":-1,"c":{"re":"1"},"h":[{"re":"-1"}]}"#;
    let out = orbclose(&["limit", &fixture_path("worked_example.json"), "--curve", curve], None);
    assert_eq!(out.status.code(), Some(0));
    let report = json(&out);
    assert_eq!(report["case"], 4);
    assert!(report["entries"][0].is_null());
}

#[test]
fn module_check_writes_a_witness() {
    let dir = std::env::temp_dir().join(format!("orbclose-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let witness = dir.join("witness.json");
    let out = orbclose(
        &["module-check", &fixture_path("collinear_pair_affine.json"), "--emit-witness", witness.to_str().unwrap()],
        None,
    );
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["always_finite"], false);
    let check = orbclose(&["check", witness.to_str().unwrap()], None);
    assert_eq!(json(&check)["verdict"]["finite"], false);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn input_errors_exit_with_one() {
    let missing = orbclose(&["check", "/nonexistent/problem.json"], None);
    assert_eq!(missing.status.code(), Some(1));
    assert!(!missing.stderr.is_empty());

    let malformed = orbclose(&["check", "-"], Some("{\"k\": 1, \"mode\": \"sideways\", \"components\": []}"));
    assert_eq!(malformed.status.code(), Some(1));

    let bad_width = r#"{"k": 2, "mode": "affine", "components": [{"character": [1], "degree": 1}]}"#;
    assert_eq!(orbclose(&["check", "-"], Some(bad_width)).status.code(), Some(1));

    let curve = r#"{"r":[0],"p":-1,"q":5,"c":{"re":"1"},"h":[{"re":"-1"}]}"#;
    let out = orbclose(&["limit", &fixture_path("worked_example.json"), "--curve", curve], None);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn usage_errors_are_input_errors() {
    assert_eq!(orbclose(&["check"], None).status.code(), Some(1));
    assert_eq!(orbclose(&["frobnicate"], None).status.code(), Some(1));
    assert_eq!(orbclose(&["--help"], None).status.code(), Some(0));
}
