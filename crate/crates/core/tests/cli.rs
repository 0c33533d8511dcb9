//! End-to-end runs of the `derivkit` binary.

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn derivkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_derivkit")).args(args).output().expect("binary runs")
}

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).expect("valid JSON")
}

fn without_timings(mut v: Value) -> Value {
    for r in v["reports"].as_array_mut().unwrap() {
        r.as_object_mut().unwrap().remove("millis");
    }
    v
}

#[test]
fn full_suite_on_twisted_chart_writes_a_passing_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let run = derivkit(&["--chart", "twisted:2", "--seed", "7", "--out", out.to_str().unwrap()]);
    assert_eq!(run.status.code(), Some(0), "{}", String::from_utf8_lossy(&run.stdout));
    let v = read_json(&out);
    let reports = v["reports"].as_array().unwrap();
    assert_eq!(reports.len(), derivkit::verifier::REGISTRY.len());
    for r in reports {
        assert_eq!(r["chart"], "twisted:2");
        assert_eq!(r["seeds"]["master"], 7);
        let skipped = r.get("skip") == Some(&Value::Bool(true));
        assert!(skipped || r["pass"] == Value::Bool(true), "{r}");
        if skipped {
            assert!(r.get("pass").is_none());
        }
    }
    let r310 = reports.iter().find(|r| r["id"] == "R3.10").unwrap();
    assert_eq!(r310["skip"], true);
    assert_eq!(r310["reason"], "requires integrable J");
    assert_eq!(v["summary"]["fail"], 0);
    assert!(String::from_utf8_lossy(&run.stdout).contains("PASS T3.8.1"));
}

#[test]
fn reruns_are_identical_apart_from_timings() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let mut runs = Vec::new();
    for _ in 0..2 {
        let run = derivkit(&["--chart", "standard:1", "--rank", "2", "--seed", "3", "--out", out.to_str().unwrap()]);
        assert_eq!(run.status.code(), Some(0));
        runs.push(without_timings(read_json(&out)));
    }
    assert_eq!(runs[0], runs[1]);
}

#[test]
fn ids_filter_selects_and_orders_reports() {
    let run = derivkit(&["--chart", "standard:2", "--ids", "EQ2.3,EX3.1,L3.6-matrix"]);
    assert_eq!(run.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&run.stdout).unwrap();
    let ids: Vec<_> = v["reports"].as_array().unwrap().iter().map(|r| r["id"].as_str().unwrap().to_owned()).collect();
    assert_eq!(ids, ["EQ2.3", "EX3.1", "L3.6-matrix"]);
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        &["--chart", "standard:0"][..],
        &["--chart", "hyperbolic:2"],
        &["--ids", "T0.0"],
        &["--rank", "0"],
        &["--seed", "minus-one"],
    ] {
        let run = derivkit(args);
        assert_eq!(run.status.code(), Some(2), "{args:?}");
        assert!(!run.stderr.is_empty());
    }
}

#[test]
fn list_ids_prints_the_registry() {
    let run = derivkit(&["--list-ids"]);
    assert_eq!(run.status.code(), Some(0));
    let text = String::from_utf8(run.stdout).unwrap();
    let ids: Vec<_> = text.lines().map(|l| l.split_whitespace().next().unwrap()).collect();
    assert_eq!(ids, derivkit::verifier::all_ids());
}

#[test]
fn config_file_is_read_and_flags_override_it() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    std::fs::write(&cfg, r#"{"chart": "twisted:2", "seed": 11, "ids": ["EQ2.3"], "rank": 1}"#).unwrap();
    let run = derivkit(&["--config", cfg.to_str().unwrap(), "--chart", "standard:2"]);
    assert_eq!(run.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&run.stdout).unwrap();
    assert_eq!(v["config"]["chart"], "standard:2");
    assert_eq!(v["config"]["seed"], 11);
    assert_eq!(v["reports"][0]["chart"], "standard:2");

    std::fs::write(&cfg, "{\n  \"chart\": \"twisted:2\",\n  \"sed\": 3\n}").unwrap();
    let run = derivkit(&["--config", cfg.to_str().unwrap()]);
    assert_eq!(run.status.code(), Some(2));
    let err = String::from_utf8(run.stderr).unwrap();
    assert!(err.contains("sed") && err.contains("line 3"), "{err}");
}
