use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const DARBOUX_1_1: &str = r#"{
  "chart": {"labels": ["x1", "x2", "t", "z1"], "time": "t"},
  "omega": [{"indices": ["x1", "x2"], "coeff_terms": [{"coeff": "1"}]}],
  "eta": [{"indices": ["t"], "coeff_terms": [{"coeff": "1"}]}]
}"#;

const MOSER_0: &str = r#"{
  "chart": {"labels": ["x", "y", "t"], "time": "t"},
  "omega": [{"indices": ["x", "y"], "coeff_terms": [{"coeff": "1"}]}],
  "eta": [{"indices": ["t"], "coeff_terms": [{"coeff": "1"}]}],
  "submanifold": ["x"]
}"#;

const MOSER_1: &str = r#"{
  "chart": {"labels": ["x", "y", "t"], "time": "t"},
  "omega": [{"indices": ["x", "y"], "coeff_terms": [{"coeff": "1"}, {"monomial": {"x": 2}, "coeff": "1"}]}],
  "eta": [
    {"indices": ["t"], "coeff_terms": [{"coeff": "1"}]},
    {"indices": ["x"], "coeff_terms": [{"monomial": {"x": 1}, "coeff": "1"}]}
  ],
  "submanifold": ["x"]
}"#;

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path
}

fn coiso(args: &[&dyn AsRef<std::ffi::OsStr>]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_coiso"));
    for a in args {
        cmd.arg(a);
    }
    cmd.output().unwrap()
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn p(path: &Path) -> &std::ffi::OsStr {
    path.as_os_str()
}

#[test]
fn check_reports_type_and_reeb_field() {
    let dir = TempDir::new().unwrap();
    let m = write(&dir, "m.json", DARBOUX_1_1);
    let out = coiso(&[&"check", &p(&m)]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["status"], "pass");
    assert_eq!(r["summary"]["kind"], "precosymplectic");
    assert_eq!((r["summary"]["p"].as_u64(), r["summary"]["k"].as_u64()), (Some(1), Some(1)));
    assert_eq!(r["summary"]["reeb"], "∂t");
}

#[test]
fn check_fails_on_non_closed_form() {
    let dir = TempDir::new().unwrap();
    let text = DARBOUX_1_1.replace(r#"[{"coeff": "1"}]}],
  "eta""#, r#"[{"coeff": "1"}, {"monomial": {"t": 1}, "coeff": "1"}]}],
  "eta""#);
    let m = write(&dir, "m.json", &text);
    let out = coiso(&[&"check", &p(&m)]);
    assert_eq!(out.status.code(), Some(1));
    let r = report(&out);
    assert_eq!(r["status"], "fail");
    assert_eq!(r["checks"][0]["name"], "omega_closed");
    assert_eq!(r["checks"][0]["passed"], false);
}

#[test]
fn embed_then_verify_round_trip() {
    let dir = TempDir::new().unwrap();
    let m = write(&dir, "m.json", DARBOUX_1_1);
    let thick = dir.path().join("thick.json");
    let out = coiso(&[&"embed", &p(&m), &"-o", &p(&thick)]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let r = report(&out);
    assert_eq!(r["artifacts"][0], thick.display().to_string());
    assert_eq!(r["summary"]["fiber"][0], "b1");

    let out = coiso(&[&"verify-embed", &p(&m), &p(&thick)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["status"], "pass");

    // the thickened manifest is itself a valid cosymplectic structure
    let out = coiso(&[&"check", &p(&thick)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["summary"]["kind"], "cosymplectic");
}

#[test]
fn embed_with_complement_file() {
    let dir = TempDir::new().unwrap();
    let m = write(&dir, "m.json", DARBOUX_1_1);
    let a = write(&dir, "a.json", r#"{"a": [[[{"monomial": {"x2": 1}, "coeff": "1"}], []]]}"#);
    let thick = dir.path().join("thick.json");
    let out = coiso(&[&"embed", &p(&m), &"--complement", &p(&a), &"-o", &p(&thick)]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let out = coiso(&[&"verify-embed", &p(&m), &p(&thick)]);
    assert_eq!(report(&out)["status"], "pass");

    let bad = write(&dir, "bad.json", r#"{"a": [[[{"monomial": {"t": 1}, "coeff": "1"}], []]]}"#);
    let out = coiso(&[&"embed", &p(&m), &"--complement", &p(&bad), &"-o", &p(&thick)]);
    assert_eq!(out.status.code(), Some(1));
    let r = report(&out);
    assert_eq!(r["status"], "error");
    assert_eq!(r["error"]["name"], "TimeDependentComplement");
}

#[test]
fn tampered_thickening_fails_with_witness() {
    let dir = TempDir::new().unwrap();
    let m = write(&dir, "m.json", DARBOUX_1_1);
    let thick = dir.path().join("thick.json");
    coiso(&[&"embed", &p(&m), &"-o", &p(&thick)]);
    let mut doc: Value = serde_json::from_str(&fs::read_to_string(&thick).unwrap()).unwrap();
    // drop dz1 ^ db1 from omega
    let omega = doc["omega"].as_array_mut().unwrap();
    omega.retain(|rec| rec["indices"] != serde_json::json!(["z1", "b1"]));
    fs::write(&thick, serde_json::to_string(&doc).unwrap()).unwrap();
    let out = coiso(&[&"verify-embed", &p(&m), &p(&thick)]);
    assert_eq!(out.status.code(), Some(1));
    let r = report(&out);
    assert_eq!(r["status"], "fail");
    let failing: Vec<&Value> = r["checks"].as_array().unwrap().iter().filter(|c| c["passed"] == false).collect();
    assert!(!failing.is_empty());
    assert!(failing.iter().any(|c| c.get("worst_point").is_some()));
}

#[test]
fn moser_example_passes() {
    let dir = TempDir::new().unwrap();
    let m0 = write(&dir, "m0.json", MOSER_0);
    let m1 = write(&dir, "m1.json", MOSER_1);
    let out = coiso(&[&"moser", &p(&m0), &p(&m1), &"--steps", &"32"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let r = report(&out);
    assert_eq!(r["summary"]["transport"], "shear:t");
    assert_eq!(r["parameters"]["steps"], 32);
}

#[test]
fn moser_rejects_structures_differing_on_m() {
    let dir = TempDir::new().unwrap();
    let m0 = write(&dir, "m0.json", MOSER_0);
    let other = MOSER_1.replace(r#"{"monomial": {"x": 1}, "coeff": "1"}"#, r#"{"coeff": "1"}"#);
    let m1 = write(&dir, "m1.json", &other);
    let out = coiso(&[&"moser", &p(&m0), &p(&m1)]);
    assert_eq!(out.status.code(), Some(1));
    let r = report(&out);
    assert_eq!(r["status"], "error");
    assert_eq!(r["error"]["module"], "moser");
    assert_eq!(r["error"]["name"], "NonvanishingOnM");
}

#[test]
fn darboux_command() {
    let dir = TempDir::new().unwrap();
    let m = write(&dir, "w.txt", "0 2 0 0\n-2 0 0 1\n0 0 0 0\n0 -1 0 0\n");
    let out = coiso(&[&"darboux", &p(&m)]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["summary"]["p"], 1);
    assert_eq!(r["summary"]["k"], 2);

    let w = write(&dir, "w3.txt", "0 1 0\n-1 0 0\n0 0 0\n");
    let eta = write(&dir, "eta.txt", "1 0 2");
    let out = coiso(&[&"darboux", &p(&w), &"--eta", &p(&eta)]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["summary"]["time_column"], 2);
    assert_eq!(r["checks"][1]["name"], "eta_dual_to_time_column");

    let not_skew = write(&dir, "ns.txt", "0 1\n1 0\n");
    let out = coiso(&[&"darboux", &p(&not_skew)]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(report(&out)["error"]["name"], "NotSkew");
}

#[test]
fn parse_errors_exit_with_two() {
    let dir = TempDir::new().unwrap();
    let broken = write(&dir, "b.json", "{ \"chart\": ");
    let out = coiso(&[&"check", &p(&broken)]);
    assert_eq!(out.status.code(), Some(2));
    let r = report(&out);
    assert_eq!(r["status"], "error");
    assert!(r["error"]["message"].as_str().unwrap().contains("line"));

    let unknown = write(&dir, "u.json", &DARBOUX_1_1.replacen('{', "{\"extra\": 0,", 1));
    assert_eq!(coiso(&[&"check", &p(&unknown)]).status.code(), Some(2));

    let label = write(&dir, "l.json", &DARBOUX_1_1.replace(r#"["t"]"#, r#"["s"]"#));
    let out = coiso(&[&"check", &p(&label)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(report(&out)["error"]["message"].as_str().unwrap().contains("eta"));

    let bad_matrix = write(&dir, "m.txt", "0 1 2\n");
    assert_eq!(coiso(&[&"darboux", &p(&bad_matrix)]).status.code(), Some(2));

    // unknown flags are rejected by the argument parser
    assert_eq!(coiso(&[&"check", &"--bogus"]).status.code(), Some(2));
}

#[test]
fn missing_file_is_an_error() {
    let out = coiso(&[&"check", &"/nonexistent/m.json"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(report(&out)["error"]["name"], "ReadError");
}

#[test]
fn structured_reports_are_byte_identical() {
    let dir = TempDir::new().unwrap();
    let m0 = write(&dir, "m0.json", MOSER_0);
    let m1 = write(&dir, "m1.json", MOSER_1);
    let a = coiso(&[&"moser", &p(&m0), &p(&m1), &"--grid", &"3", &"--steps", &"16"]);
    let b = coiso(&[&"moser", &p(&m0), &p(&m1), &"--grid", &"3", &"--steps", &"16"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn both_formats_split_streams() {
    let dir = TempDir::new().unwrap();
    let m = write(&dir, "m.json", DARBOUX_1_1);
    let out = coiso(&[&"check", &p(&m), &"--format", &"both"]);
    report(&out);
    let human = String::from_utf8(out.stderr).unwrap();
    assert!(human.starts_with("check: PASS"));
    assert!(human.contains("omega_closed"));
    let out = coiso(&[&"check", &p(&m), &"--format", &"human"]);
    assert!(String::from_utf8(out.stdout).unwrap().starts_with("check: PASS"));
}

#[test]
fn flags_override_manifest_parameters() {
    let dir = TempDir::new().unwrap();
    let text = DARBOUX_1_1.replace("\n}", ",\n  \"verification\": {\"radius\": \"1/4\", \"grid\": 3}\n}");
    let m = write(&dir, "m.json", &text);
    let r = report(&coiso(&[&"check", &p(&m)]));
    assert_eq!(r["parameters"]["radius"], "1/4");
    assert_eq!(r["parameters"]["samples"], 81);
    let r = report(&coiso(&[&"check", &p(&m), &"--radius", &"1/3", &"--grid", &"2"]));
    assert_eq!(r["parameters"]["radius"], "1/3");
    assert_eq!(r["parameters"]["samples"], 16);
}
