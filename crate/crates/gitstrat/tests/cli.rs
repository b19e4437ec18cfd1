//! Exit codes and outputs of the command line tool.

use serde_json::Value;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn gitstrat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gitstrat")).args(args).output().expect("run gitstrat")
}

fn data(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join(name).display().to_string()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn verify_shipped_files_passes() {
    let files = ["betas", "strata", "certificates", "errata", "recipes", "schedules", "fixtures"].map(|f| data(&format!("{f}.json")));
    let args: Vec<&str> = std::iter::once("verify").chain(files.iter().map(String::as_str)).collect();
    let out = gitstrat(&args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let reports = json(&out);
    assert_eq!(reports.as_array().unwrap().len(), 7);
    assert!(reports.as_array().unwrap().iter().all(|r| r["failed"] == 0));
}

#[test]
fn verify_tampered_certificate_fails() {
    let dir = tempfile::tempdir().unwrap();
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(data("certificates.json")).unwrap()).unwrap();
    let lambda = &mut v["rows"][5]["lambda"][0];
    *lambda = Value::from(lambda.as_i64().unwrap() + 1);
    let p = write(dir.path(), "certs.json", &v.to_string());
    let out = gitstrat(&["verify", p.to_str().unwrap(), "--format", "csv"]);
    assert_eq!(out.status.code(), Some(1));
    let csv = String::from_utf8(out.stdout).unwrap();
    assert_eq!(csv.lines().filter(|l| l.contains(",fail,")).count(), 1);
}

#[test]
fn verify_input_errors() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.json", "{ not json");
    let unknown = write(dir.path(), "unknown.json", r#"{"kind":"mystery","description":"","rows":[]}"#);
    for p in [bad.to_str().unwrap(), unknown.to_str().unwrap(), "/nonexistent/file.json"] {
        assert_eq!(gitstrat(&["verify", p]).status.code(), Some(2), "{p}");
    }
    assert_eq!(gitstrat(&["verify"]).status.code(), Some(2));
}

#[test]
fn stratum_by_index_and_value() {
    let out = gitstrat(&["stratum", "--index", "292"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["z"][0]["label"], "x454");
    assert_eq!(v["w"].as_array().unwrap().len(), 0);
    let out = gitstrat(&["stratum", "--beta", "(1/12)(0,0,0,0,0,-3,1,1,1)"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["index"], 1);
    assert_eq!(v["lambda"], serde_json::json!([0, 0, 0, 0, 0, -3, 1, 1, 1]));
}

#[test]
fn stratum_rejects_unknown_beta() {
    for beta in [
        "(1/6)(0,0,0,0,0,-3,1,1,1)",
        "(1/12)(0,0,0,0,0,1,1,1,-3)",
        "1,2,3",
        "1,2,x",
    ] {
        assert_eq!(gitstrat(&["stratum", "--beta", beta]).status.code(), Some(3), "{beta}");
    }
    assert_eq!(gitstrat(&["stratum", "--index", "999"]).status.code(), Some(3));
}

#[test]
fn enumerate_small_config() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "rep.json", r#"{"factors":[3,2],"summands":[[{"group":0,"degree":2},{"group":1,"degree":1}]]}"#);
    let cp = dir.path().join("cp.txt");
    let out = gitstrat(&[
        "--config",
        cfg.to_str().unwrap(),
        "enumerate",
        "--threads",
        "2",
        "--checkpoint",
        cp.to_str().unwrap(),
        "--format",
        "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let csv = String::from_utf8(out.stdout).unwrap();
    assert_eq!(csv.lines().next(), Some("position,index,norm_sq,beta"));
    assert_eq!(csv.lines().count(), 7);
    assert!(String::from_utf8_lossy(&out.stderr).contains("count: 6"));
    assert!(std::fs::read_to_string(&cp).unwrap().starts_with("# "));
    let again = gitstrat(&["--config", cfg.to_str().unwrap(), "enumerate", "--checkpoint", cp.to_str().unwrap(), "--format", "csv"]);
    assert_eq!(String::from_utf8(again.stdout).unwrap(), csv);
}

#[test]
fn bad_config_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "rep.json", r#"{"factors":[0],"summands":[]}"#);
    assert_eq!(gitstrat(&["--config", cfg.to_str().unwrap(), "enumerate"]).status.code(), Some(2));
    assert_eq!(gitstrat(&["--config", "/nonexistent.json", "enumerate"]).status.code(), Some(2));
}

#[test]
fn substrata_routes_agree() {
    let out = gitstrat(&["substrata", "--index", "289"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["agreement"], true);
    assert_eq!(v["scan"], v["direct"]);
    assert_eq!(gitstrat(&["substrata", "--index", "0"]).status.code(), Some(3));
}

#[test]
fn fixtures_match_shipped_file() {
    let out = gitstrat(&["fixtures"]);
    assert_eq!(out.status.code(), Some(0));
    let shipped: Value = serde_json::from_str(&std::fs::read_to_string(data("fixtures.json")).unwrap()).unwrap();
    assert_eq!(json(&out), shipped);
}
