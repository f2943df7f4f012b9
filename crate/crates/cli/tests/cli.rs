use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn qnil(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qnil")).args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn tsystem_a2_exponents() {
    let out = qnil(&["verify", "tsystem", "--cartan", "A2", "--word", "1,2,1", "--b", "1", "--d", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schema"], "qnil/1");
    assert_eq!(v["passed"], true);
    let inst = &v["result"]["instances"][0];
    assert_eq!((inst["A"].as_i64(), inst["B"].as_i64(), inst["C"].as_i64()), (Some(-1), Some(0), Some(0)));
}

#[test]
fn output_is_deterministic() {
    let args = ["basis", "dcb", "--cartan", "B2", "--word", "1,2,1,2", "--height", "3"];
    let a = qnil(&args);
    let b = qnil(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(qnil(&["basis", "dcb", "--cartan", "A2", "--word", "1,3"]).status.code(), Some(2));
    assert_eq!(qnil(&["basis", "pbw", "--cartan", "A2", "--word", "1,1"]).status.code(), Some(2));
    assert_eq!(qnil(&["basis", "pbw", "--cartan", "Q7", "--word", "1"]).status.code(), Some(2));
    assert_eq!(qnil(&["basis", "pbw", "--word", "1"]).status.code(), Some(2));
    assert_eq!(qnil(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn config_file_and_precedence() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "cartan = \"A2\"\nword = [1, 2, 1]\nheight = 1").unwrap();
    let path = f.path().to_str().unwrap();
    let out = qnil(&["basis", "pbw", "--config", path]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["result"]["height"], 1);
    let out = qnil(&["basis", "pbw", "--config", path, "--height", "2"]);
    assert_eq!(json(&out)["result"]["height"], 2);
}

#[test]
fn unknown_config_key_is_usage_error() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "cartan = \"A2\"\nwrod = \"1,2\"").unwrap();
    let out = qnil(&["basis", "pbw", "--config", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn output_file_and_text_format() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("r.txt");
    let out = qnil(&[
        "minor", "--cartan", "A2", "--lambda", "1,0", "--u", "", "--w", "1", "--format", "text", "--output",
        p.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&p).unwrap();
    assert!(text.contains("schema = \"qnil/1\""));
}

#[test]
fn twist_of_a_label() {
    let out = qnil(&["twist", "--cartan", "A2", "--word", "1,2,1", "--label", "1,0,1"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(json(&out)["passed"], true);
}

#[test]
fn finite_type_rejects_affine() {
    let out = qnil(&["verify", "finitetype", "--cartan", r#"{"gcm": [[2,-2],[-2,2]], "sym": [1,1]}"#]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_all_small() {
    let out = qnil(&["verify", "all", "--height", "2"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["result"].as_array().unwrap().len(), 9);
}
