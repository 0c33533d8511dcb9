//! C ABI over the derivkit verifier.
//!
//! A [`DkSuite`] is an opaque handle built from a JSON run configuration (the
//! same document the CLI's `--config` accepts). Every entry point returns a
//! [`DkStatus`] or a pointer; panics never cross the boundary. Strings handed
//! out by this library are owned by the caller and released with
//! [`dk_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use derivkit::cli::{execute, RunConfig, SuiteReport};
use derivkit::verifier;

/// Result codes. `DK_STATUS_OK` and `DK_STATUS_IDENTITY_FAILED` mirror the
/// CLI's exit codes 0 and 1; the rest report misuse or an internal fault.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DkStatus {
    Ok = 0,
    IdentityFailed = 1,
    InvalidConfig = 2,
    NullArgument = 3,
    InvalidUtf8 = 4,
    NotRun = 5,
    Panic = 6,
}

/// Opaque suite handle.
pub struct DkSuite {
    config: RunConfig,
    report: Option<SuiteReport>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn guard(f: impl FnOnce() -> DkStatus) -> DkStatus {
    clear_error();
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| {
        set_error("internal panic");
        DkStatus::Panic
    })
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).map(CString::into_raw).unwrap_or(ptr::null_mut())
}

/// # Safety
/// `s` must be null or point to a NUL-terminated string.
unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, DkStatus> {
    if s.is_null() {
        set_error("null argument");
        return Err(DkStatus::NullArgument);
    }
    CStr::from_ptr(s).to_str().map_err(|_| {
        set_error("argument is not valid UTF-8");
        DkStatus::InvalidUtf8
    })
}

/// Parses and validates `config_json`; on success stores a new handle in `*out`.
///
/// # Safety
/// `config_json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dk_suite_new(config_json: *const c_char, out: *mut *mut DkSuite) -> DkStatus {
    guard(|| {
        if out.is_null() {
            set_error("null output pointer");
            return DkStatus::NullArgument;
        }
        *out = ptr::null_mut();
        let text = match read_str(config_json) {
            Ok(t) => t,
            Err(status) => return status,
        };
        let config = match RunConfig::from_json(text) {
            Ok(c) => c,
            Err(e) => {
                set_error(e.to_string());
                return DkStatus::InvalidConfig;
            }
        };
        if let Err(e) = config.checks() {
            set_error(e.to_string());
            return DkStatus::InvalidConfig;
        }
        *out = Box::into_raw(Box::new(DkSuite { config, report: None }));
        DkStatus::Ok
    })
}

/// Runs every selected check. Returns `DK_STATUS_OK` when none failed
/// (skips do not fail) and `DK_STATUS_IDENTITY_FAILED` otherwise.
///
/// # Safety
/// `suite` must come from [`dk_suite_new`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn dk_suite_run(suite: *mut DkSuite) -> DkStatus {
    guard(|| {
        let Some(suite) = suite.as_mut() else {
            set_error("null suite");
            return DkStatus::NullArgument;
        };
        match execute(&suite.config) {
            Ok(report) => {
                let status = if report.all_passed() { DkStatus::Ok } else { DkStatus::IdentityFailed };
                suite.report = Some(report);
                status
            }
            Err(e) => {
                set_error(e.to_string());
                DkStatus::InvalidConfig
            }
        }
    })
}

/// Copies the JSON report of the last run into `*out` (free it with
/// [`dk_string_free`]). `DK_STATUS_NOT_RUN` before the first run.
///
/// # Safety
/// `suite` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn dk_suite_report_json(suite: *const DkSuite, out: *mut *mut c_char) -> DkStatus {
    guard(|| {
        if out.is_null() {
            set_error("null output pointer");
            return DkStatus::NullArgument;
        }
        *out = ptr::null_mut();
        let Some(suite) = suite.as_ref() else {
            set_error("null suite");
            return DkStatus::NullArgument;
        };
        match &suite.report {
            Some(r) => {
                *out = into_c_string(r.to_json());
                DkStatus::Ok
            }
            None => {
                set_error("suite has not been run");
                DkStatus::NotRun
            }
        }
    })
}

/// Counts from the last run; any pointer may be null.
///
/// # Safety
/// `suite` must be a live handle; non-null outputs must be valid.
#[no_mangle]
pub unsafe extern "C" fn dk_suite_summary(
    suite: *const DkSuite,
    pass: *mut usize,
    fail: *mut usize,
    skip: *mut usize,
) -> DkStatus {
    guard(|| {
        let Some(suite) = suite.as_ref() else {
            set_error("null suite");
            return DkStatus::NullArgument;
        };
        let Some(report) = &suite.report else {
            set_error("suite has not been run");
            return DkStatus::NotRun;
        };
        let s = report.summary;
        for (ptr, value) in [(pass, s.pass), (fail, s.fail), (skip, s.skip)] {
            if let Some(p) = ptr.as_mut() {
                *p = value;
            }
        }
        DkStatus::Ok
    })
}

/// Releases a handle; null is ignored.
///
/// # Safety
/// `suite` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dk_suite_free(suite: *mut DkSuite) {
    if !suite.is_null() {
        drop(Box::from_raw(suite));
    }
}

/// Newline-separated registry ids, owned by the caller.
#[no_mangle]
pub extern "C" fn dk_list_ids() -> *mut c_char {
    catch_unwind(|| into_c_string(verifier::all_ids().join("\n"))).unwrap_or(ptr::null_mut())
}

/// Message for the most recent error on this thread, or null. Borrowed:
/// valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn dk_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version, static.
#[no_mangle]
pub extern "C" fn dk_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Frees a string returned by this library; null is ignored.
///
/// # Safety
/// `s` must be null or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dk_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
