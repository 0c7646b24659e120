use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn spec(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("specs").join(name).display().to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_witt-diamond")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let out = run(&full);
    let v = serde_json::from_slice(&out.stdout).expect("stdout is JSON");
    (out.status.code().unwrap(), v)
}

fn status<'a>(report: &'a Value, check: &str) -> &'a str {
    report["checks"].as_array().unwrap().iter().find(|c| c["check"] == check).unwrap_or_else(|| panic!("no check {check}"))["status"]
        .as_str()
        .unwrap()
}

#[test]
fn brackets_pass() {
    let (code, r) = json(&["verify-brackets", "--window", "2"]);
    assert_eq!(code, 0);
    assert_eq!(status(&r, "antisymmetry"), "pass");
    assert_eq!(status(&r, "jacobi"), "pass");
}

#[test]
fn second_map_is_a_homomorphism() {
    let (code, r) = json(&["verify-hom", "--map", "abgg", "--alpha", "1/2", "--beta", "2", "--gamma", "1", "--g", "t^2 + 1"]);
    assert_eq!(code, 0, "{r}");
}

#[test]
fn first_map_reports_failing_pairs() {
    let (code, r) = json(&["verify-hom", "--map", "ab", "--alpha", "1", "--beta", "2", "--window", "1"]);
    assert_eq!(code, 1);
    assert_eq!(status(&r, "phi_ab: homomorphism"), "fail");
    assert_eq!(status(&r, "phi_ab: preimages"), "pass");
}

#[test]
fn split_module_witness() {
    let (code, r) = json(&["simplicity", "--module", &spec("f-split-not-simple.json"), "--max-degree", "4"]);
    assert_eq!(code, 0, "{r}");
    let text = r.to_string();
    assert!(text.contains("NotSimple (witness n = 1)"), "{text}");
}

#[test]
fn reduce_then_replay() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("cert.json");
    let cert = cert.to_str().unwrap();
    let out = run(&["reduce", "--module", &spec("omega.json"), "--vector", "s^2*t + 3t^2", "--certificate", cert]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let (code, r) = json(&["replay", "--module", &spec("omega.json"), "--certificate", cert]);
    assert_eq!(code, 0, "{r}");

    // a tampered certificate is rejected
    let text = std::fs::read_to_string(cert).unwrap().replacen("\"coef\": \"1\"", "\"coef\": \"2\"", 1);
    std::fs::write(cert, text).unwrap();
    let (code, _) = json(&["replay", "--module", &spec("omega.json"), "--certificate", cert]);
    assert_eq!(code, 1);
}

#[test]
fn iso_finds_permutation() {
    let (code, r) = json(&["iso", "--left", &spec("tensor-distinct.json"), "--right", &spec("tensor-swapped.json")]);
    assert_eq!(code, 0);
    assert!(r.to_string().contains("[2,1]"), "{r}");
}

#[test]
fn out_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let (_, r) = json(&["--out", path.to_str().unwrap(), "rank", "--module", &spec("omega.json")]);
    let saved: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(saved, r);
    assert_eq!(status(&r, "U(H)-rank"), "pass");
}

#[test]
fn bad_spec_exits_2_with_pointer() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, r#"{"family": "Omega", "alpha": "1", "beta": "0", "gamma": "0", "lambda": "1", "g": []}"#).unwrap();
    let out = run(&["rank", "--module", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("/beta"));

    let out = run(&["rank", "--module", "/nonexistent.json"]);
    assert_eq!(out.status.code(), Some(2));
}
