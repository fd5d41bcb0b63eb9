//! C ABI for the g2solv toolkit.
//!
//! Every entry point mirrors a CLI subcommand and returns a status code plus
//! an opaque report handle. The report owns its memory; callers read it as a
//! JSON document (same schema as `g2solv --json`) and must release both the
//! report and any string obtained from it with the matching free function.
//!
//! All functions are panic-safe: a caught panic is reported as
//! `G2SOLV_STATUS_INTERNAL_ERROR` instead of unwinding across the boundary.

use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use g2solv::{run_search, run_tau, run_validate, run_verify, RunReport, SearchConfig};

/// Status of an FFI call.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum G2solvStatus {
    /// The command ran and every check passed.
    Ok = 0,
    /// The command ran but at least one check failed.
    CheckFailed = 1,
    /// Bad arguments: null/invalid pointers, malformed UTF-8, unknown
    /// fixtures, or values the command rejects.
    InvalidArgument = 2,
    /// A panic was caught behind the boundary; the report is not produced.
    InternalError = 3,
}

/// Opaque result of a run. Free with [`g2solv_report_free`].
pub struct G2solvReport {
    report: RunReport,
    json: CString,
}

fn finish(result: Result<RunReport, g2solv::UsageError>, out: *mut *mut G2solvReport) -> G2solvStatus {
    match result {
        Ok(report) => {
            let passed = report.passed();
            let json = CString::new(report.to_json())
                .unwrap_or_else(|_| CString::new("{}").expect("literal"));
            unsafe {
                *out = Box::into_raw(Box::new(G2solvReport { report, json }));
            }
            if passed {
                G2solvStatus::Ok
            } else {
                G2solvStatus::CheckFailed
            }
        }
        Err(_) => G2solvStatus::InvalidArgument,
    }
}

/// # Safety
/// `s` must be null or a valid NUL-terminated string.
unsafe fn text<'a>(s: *const c_char) -> Option<&'a str> {
    if s.is_null() {
        return None;
    }
    unsafe { CStr::from_ptr(s) }.to_str().ok()
}

fn guarded(
    out: *mut *mut G2solvReport,
    body: impl FnOnce() -> Result<RunReport, g2solv::UsageError>,
) -> G2solvStatus {
    if out.is_null() {
        return G2solvStatus::InvalidArgument;
    }
    unsafe {
        *out = ptr::null_mut();
    }
    match catch_unwind(AssertUnwindSafe(|| finish(body(), out))) {
        Ok(status) => status,
        Err(_) => G2solvStatus::InternalError,
    }
}

/// Validates a fixture id/path or an inline bracket tuple.
///
/// # Safety
/// `target` must be a valid NUL-terminated string; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn g2solv_validate(
    target: *const c_char,
    out: *mut *mut G2solvReport,
) -> G2solvStatus {
    let Some(target) = (unsafe { text(target) }) else {
        return G2solvStatus::InvalidArgument;
    };
    guarded(out, || run_validate(target))
}

/// Torsion-component report for a 3-form on a fixture.
///
/// `phi` follows the CLI grammar: "base", "family:r,s", or a form literal.
/// `metric` is "g", "gtilde", or null for the per-φ default. `m` is a
/// rational literal such as "1" or "3/7".
///
/// # Safety
/// `target`, `phi`, `m` must be valid NUL-terminated strings; `metric` may
/// be null; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn g2solv_tau(
    target: *const c_char,
    phi: *const c_char,
    metric: *const c_char,
    m: *const c_char,
    out: *mut *mut G2solvReport,
) -> G2solvStatus {
    let (Some(target), Some(phi), Some(m)) =
        (unsafe { text(target) }, unsafe { text(phi) }, unsafe { text(m) })
    else {
        return G2solvStatus::InvalidArgument;
    };
    let metric = if metric.is_null() {
        None
    } else {
        match unsafe { text(metric) } {
            Some(v) => Some(v),
            None => return G2solvStatus::InvalidArgument,
        }
    };
    guarded(out, || run_tau(target, phi, metric, m))
}

/// Runs the exact verification battery. `section` is "all" or "2".."6".
///
/// # Safety
/// `section` must be a valid NUL-terminated string; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn g2solv_verify_paper(
    section: *const c_char,
    out: *mut *mut G2solvReport,
) -> G2solvStatus {
    let Some(section) = (unsafe { text(section) }) else {
        return G2solvStatus::InvalidArgument;
    };
    guarded(out, || run_verify(section))
}

/// Numeric parallel-spinor search on a fixture with `starts` random starts
/// and the given seed; thresholds are the library defaults.
///
/// # Safety
/// `target` must be a valid NUL-terminated string; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn g2solv_search(
    target: *const c_char,
    starts: usize,
    seed: u64,
    out: *mut *mut G2solvReport,
) -> G2solvStatus {
    let Some(target) = (unsafe { text(target) }) else {
        return G2solvStatus::InvalidArgument;
    };
    guarded(out, || {
        let cfg = SearchConfig { starts, seed, ..SearchConfig::default() };
        run_search(target, &cfg)
    })
}

/// Borrowed pointer to the report's JSON document (NUL-terminated, UTF-8,
/// byte-identical to the `--json` CLI output). Valid until the report is
/// freed; do not free the string itself.
///
/// # Safety
/// `report` must be a live pointer from this library, or null.
#[no_mangle]
pub unsafe extern "C" fn g2solv_report_json(report: *const G2solvReport) -> *const c_char {
    if report.is_null() {
        return ptr::null();
    }
    unsafe { &*report }.json.as_ptr()
}

/// Copy of the report's JSON document that outlives the report. Free with
/// [`g2solv_string_free`].
///
/// # Safety
/// `report` must be a live pointer from this library, or null.
#[no_mangle]
pub unsafe extern "C" fn g2solv_report_json_copy(report: *const G2solvReport) -> *mut c_char {
    if report.is_null() {
        return ptr::null_mut();
    }
    unsafe { &*report }.json.clone().into_raw()
}

/// 1 when every check in the report passed, 0 otherwise (or when null).
///
/// # Safety
/// `report` must be a live pointer from this library, or null.
#[no_mangle]
pub unsafe extern "C" fn g2solv_report_pass(report: *const G2solvReport) -> i32 {
    if report.is_null() {
        return 0;
    }
    i32::from(unsafe { &*report }.report.passed())
}

/// Number of checks carried by the report (0 for null).
///
/// # Safety
/// `report` must be a live pointer from this library, or null.
#[no_mangle]
pub unsafe extern "C" fn g2solv_report_check_count(report: *const G2solvReport) -> usize {
    if report.is_null() {
        return 0;
    }
    unsafe { &*report }.report.checks.len()
}

/// Releases a report. Null is a no-op.
///
/// # Safety
/// `report` must be a pointer produced by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn g2solv_report_free(report: *mut G2solvReport) {
    if !report.is_null() {
        drop(unsafe { Box::from_raw(report) });
    }
}

/// Releases a string returned by [`g2solv_report_json_copy`]. Null is a
/// no-op.
///
/// # Safety
/// `s` must be a pointer produced by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn g2solv_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}
