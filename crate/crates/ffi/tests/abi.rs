use std::ffi::{CStr, CString};
use std::ptr;

use derivkit_ffi::*;
use serde_json::Value;

fn new_suite(json: &str) -> (DkStatus, *mut DkSuite) {
    let cfg = CString::new(json).unwrap();
    let mut suite = ptr::null_mut();
    let status = unsafe { dk_suite_new(cfg.as_ptr(), &mut suite) };
    (status, suite)
}

fn last_error() -> String {
    let p = dk_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn run_and_read_report() {
    let (status, suite) = new_suite(r#"{"chart": "standard:2", "seed": 4, "ids": ["EQ2.3", "R3.10", "L3.6-matrix"]}"#);
    assert_eq!(status, DkStatus::Ok);
    unsafe {
        let mut json = ptr::null_mut();
        assert_eq!(dk_suite_report_json(suite, &mut json), DkStatus::NotRun);
        assert!(json.is_null());

        assert_eq!(dk_suite_run(suite), DkStatus::Ok);
        let (mut pass, mut fail, mut skip) = (0, 0, 0);
        assert_eq!(dk_suite_summary(suite, &mut pass, &mut fail, &mut skip), DkStatus::Ok);
        assert_eq!((pass, fail, skip), (3, 0, 0));

        assert_eq!(dk_suite_report_json(suite, &mut json), DkStatus::Ok);
        let v: Value = serde_json::from_str(CStr::from_ptr(json).to_str().unwrap()).unwrap();
        dk_string_free(json);
        assert_eq!(v["reports"][2]["id"], "L3.6-matrix");
        assert_eq!(v["config"]["seed"], 4);
        dk_suite_free(suite);
    }
}

#[test]
fn skips_do_not_fail_a_run() {
    let (status, suite) = new_suite(r#"{"chart": "twisted:2", "ids": ["R3.10"], "rank": 1}"#);
    assert_eq!(status, DkStatus::Ok);
    unsafe {
        assert_eq!(dk_suite_run(suite), DkStatus::Ok);
        let mut skip = 0;
        assert_eq!(dk_suite_summary(suite, ptr::null_mut(), ptr::null_mut(), &mut skip), DkStatus::Ok);
        assert_eq!(skip, 1);
        dk_suite_free(suite);
    }
}

#[test]
fn bad_configs_are_rejected_with_a_message() {
    for (json, needle) in [
        (r#"{"chart": "standard:0"}"#, "dimension"),
        (r#"{"chart": "standard:1", "ids": ["T0.0"]}"#, "T0.0"),
        ("{\"chart\": \"standard:1\",\n\"colour\": 1}", "colour"),
        ("not json", "line 1"),
    ] {
        let (status, suite) = new_suite(json);
        assert_eq!(status, DkStatus::InvalidConfig, "{json}");
        assert!(suite.is_null());
        assert!(last_error().contains(needle), "{json}: {}", last_error());
    }
}

#[test]
fn null_and_invalid_arguments() {
    unsafe {
        let mut suite = ptr::null_mut();
        assert_eq!(dk_suite_new(ptr::null(), &mut suite), DkStatus::NullArgument);
        let cfg = CString::new("{}").unwrap();
        assert_eq!(dk_suite_new(cfg.as_ptr(), ptr::null_mut()), DkStatus::NullArgument);
        let bad = [0xffu8, 0xfe, 0];
        assert_eq!(dk_suite_new(bad.as_ptr().cast(), &mut suite), DkStatus::InvalidUtf8);
        assert_eq!(dk_suite_run(ptr::null_mut()), DkStatus::NullArgument);
        let mut json = ptr::null_mut();
        assert_eq!(dk_suite_report_json(ptr::null(), &mut json), DkStatus::NullArgument);
        dk_suite_free(ptr::null_mut());
        dk_string_free(ptr::null_mut());
    }
}

#[test]
fn list_ids_and_version() {
    let ids = dk_list_ids();
    let text = unsafe { CStr::from_ptr(ids) }.to_str().unwrap().to_owned();
    unsafe { dk_string_free(ids) };
    assert_eq!(text.lines().collect::<Vec<_>>(), derivkit::verifier::all_ids());
    let version = unsafe { CStr::from_ptr(dk_version()) }.to_str().unwrap();
    assert_eq!(version, env!("CARGO_PKG_VERSION"));
}
