//! The `cusg` binary: exit codes, JSON reports, files and the cache.

use std::fs;
use std::process::{Command, Output};

use cusg::carrier::enumerate::valid_tables_up_to_iso;
use cusg::cli::format::serialize_table;
use serde_json::Value;

fn cusg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cusg")).args(args).env_remove("CUSG_FUEL").output().expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let out = cusg(&all);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)));
    (out.status.code().unwrap(), v)
}

#[test]
fn exit_codes() {
    assert_eq!(cusg(&["dim", "chain:3"]).status.code(), Some(0));
    assert_eq!(cusg(&["axioms", "chain:3", "--axiom", "wc"]).status.code(), Some(1));
    assert_eq!(cusg(&["axioms", "nbar", "--axiom", "o5", "--fuel", "200"]).status.code(), Some(3));
    assert_eq!(cusg(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(cusg(&["dim", "no/such/file.cutable"]).status.code(), Some(2));
}

#[test]
fn json_reports_are_byte_identical() {
    for args in [&["dim", "sum:chain:2+chain:2"][..], &["lattice", "chain:3", "--enumerate", "--pairs"], &["axioms", "nbar", "--fuel", "300"]] {
        let mut all = vec!["--json"];
        all.extend_from_slice(args);
        assert_eq!(cusg(&all).stdout, cusg(&all).stdout, "{args:?}");
    }
    let (_, v) = json(&["dim", "chain:2"]);
    assert!(v.get("timing_ms").is_none());
    let (_, v) = json(&["--timing", "dim", "chain:2"]);
    assert!(v["timing_ms"].is_u64());
}

#[test]
fn table_files() {
    let dir = tempfile::tempdir().unwrap();
    let tables = valid_tables_up_to_iso(4);
    for (i, t) in tables.iter().enumerate() {
        let path = dir.path().join(format!("t{i}.cutable"));
        fs::write(&path, serialize_table(t)).unwrap();
        let (code, v) = json(&["check", path.to_str().unwrap()]);
        assert_eq!(code, 0, "{v}");
        assert_eq!(v["input_digest"].as_str().unwrap().len(), 64);
    }
    let bad = dir.path().join("bad.cutable");
    fs::write(&bad, "CUTABLE v1\nn=2\nadd=\n0 1\n1 x\nleq=\n1 1\n0 1\n").unwrap();
    let out = cusg(&["check", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 5"));
}

#[test]
fn cache_reuse_and_verification() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let first = cusg(&["--json", "--cache", cache, "dim", "chain:3"]);
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 1);
    let second = cusg(&["--json", "--cache", cache, "dim", "chain:3"]);
    assert_eq!(first.stdout, second.stdout);
    let verified = cusg(&["--cache", cache, "--verify-cache", "dim", "chain:3"]);
    assert_eq!(verified.status.code(), Some(0), "{}", String::from_utf8_lossy(&verified.stderr));
}

#[test]
fn closures_on_nbar() {
    let (code, v) = json(&["closure", "nbar", "--op", "delta", "--subset", "0,inf"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["output"]["elements"], "{0}");
    let (_, v) = json(&["closure", "nbar", "--op", "sub-cu", "--subset", "0,5..,inf"]);
    assert_eq!(v["status"], "ok");
}

#[test]
fn selftest_is_green() {
    let out = cusg(&["selftest"]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert_eq!(out.status.code(), Some(0), "{text}");
    assert_eq!(text.matches("[PASS]").count(), 11);
}
