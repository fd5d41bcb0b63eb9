//! Exercises the C ABI exactly as a C caller would: raw pointers, status
//! codes, and manual handle lifetimes.

use std::ffi::{c_char, CStr, CString};
use std::ptr;

use g2solv_ffi::{
    g2solv_report_check_count, g2solv_report_free, g2solv_report_json, g2solv_report_json_copy,
    g2solv_report_pass, g2solv_search, g2solv_string_free, g2solv_tau, g2solv_validate,
    g2solv_verify_paper, G2solvReport, G2solvStatus,
};

fn c(text: &str) -> CString {
    CString::new(text).expect("no interior NUL")
}

unsafe fn json_of(report: *const G2solvReport) -> serde_json::Value {
    let raw = unsafe { g2solv_report_json(report) };
    assert!(!raw.is_null());
    let text = unsafe { CStr::from_ptr(raw) }.to_str().expect("UTF-8");
    serde_json::from_str(text).expect("valid JSON")
}

#[test]
fn validate_round_trip() {
    let mut report: *mut G2solvReport = ptr::null_mut();
    let status = unsafe { g2solv_validate(c("example2").as_ptr(), &mut report) };
    assert_eq!(status, G2solvStatus::Ok);
    assert!(!report.is_null());
    unsafe {
        assert_eq!(g2solv_report_pass(report), 1);
        assert_eq!(g2solv_report_check_count(report), 3);
        let json = json_of(report);
        assert_eq!(json["schema"], 1);
        assert_eq!(json["results"]["fixture"], "example2");
        g2solv_report_free(report);
    }
}

#[test]
fn check_failure_and_invalid_argument_are_distinct() {
    // A parseable tuple that violates the Jacobi identity: the run succeeds
    // but the check fails.
    let mut report: *mut G2solvReport = ptr::null_mut();
    let status = unsafe { g2solv_validate(c("(0,0,e12,0,0,e15+e34)").as_ptr(), &mut report) };
    assert_eq!(status, G2solvStatus::CheckFailed);
    unsafe {
        assert_eq!(g2solv_report_pass(report), 0);
        g2solv_report_free(report);
    }

    // An unknown fixture is a usage error: no report is produced.
    let mut report: *mut G2solvReport = ptr::null_mut();
    let status = unsafe { g2solv_validate(c("no-such-fixture").as_ptr(), &mut report) };
    assert_eq!(status, G2solvStatus::InvalidArgument);
    assert!(report.is_null());

    // Null pointers are rejected without crashing.
    let status = unsafe { g2solv_validate(ptr::null(), &mut report) };
    assert_eq!(status, G2solvStatus::InvalidArgument);
    let status = unsafe { g2solv_validate(c("example2").as_ptr(), ptr::null_mut()) };
    assert_eq!(status, G2solvStatus::InvalidArgument);
}

#[test]
fn tau_exposes_exact_components() {
    let mut report: *mut G2solvReport = ptr::null_mut();
    let status = unsafe {
        g2solv_tau(
            c("example2").as_ptr(),
            c("family:1,2").as_ptr(),
            ptr::null(),
            c("1").as_ptr(),
            &mut report,
        )
    };
    assert_eq!(status, G2solvStatus::Ok);
    unsafe {
        let json = json_of(report);
        assert_eq!(json["results"]["tau1"], "36/175");
        assert_eq!(json["results"]["class"], "R ⊕ S²₀(R⁷) ⊕ R⁷");
        g2solv_report_free(report);
    }

    let status = unsafe {
        g2solv_tau(
            c("example2").as_ptr(),
            c("base").as_ptr(),
            c("not-a-metric").as_ptr(),
            c("1").as_ptr(),
            &mut report,
        )
    };
    assert_eq!(status, G2solvStatus::InvalidArgument);
}

#[test]
fn verify_section_runs_and_rejects_bad_sections() {
    let mut report: *mut G2solvReport = ptr::null_mut();
    let status = unsafe { g2solv_verify_paper(c("3").as_ptr(), &mut report) };
    assert_eq!(status, G2solvStatus::Ok);
    unsafe {
        let json = json_of(report);
        assert_eq!(json["results"]["failures"], 0);
        g2solv_report_free(report);
    }

    let mut report: *mut G2solvReport = ptr::null_mut();
    let status = unsafe { g2solv_verify_paper(c("9").as_ptr(), &mut report) };
    assert_eq!(status, G2solvStatus::InvalidArgument);
    assert!(report.is_null());
}

#[test]
fn search_is_deterministic_and_strings_can_outlive_reports() {
    let run = || -> (G2solvStatus, String) {
        let mut report: *mut G2solvReport = ptr::null_mut();
        let status =
            unsafe { g2solv_search(c("example2").as_ptr(), 8, 3, &mut report) };
        let copy: *mut c_char = unsafe { g2solv_report_json_copy(report) };
        unsafe { g2solv_report_free(report) };
        let text = unsafe { CStr::from_ptr(copy) }.to_str().expect("UTF-8").to_owned();
        unsafe { g2solv_string_free(copy) };
        (status, text)
    };
    let (status_a, json_a) = run();
    let (status_b, json_b) = run();
    assert_eq!(status_a, G2solvStatus::Ok);
    assert_eq!(status_b, G2solvStatus::Ok);
    assert_eq!(json_a, json_b, "same seed must give byte-identical JSON");

    // Zero starts is rejected by the command layer.
    let mut report: *mut G2solvReport = ptr::null_mut();
    let status = unsafe { g2solv_search(c("example2").as_ptr(), 0, 3, &mut report) };
    assert_eq!(status, G2solvStatus::InvalidArgument);
    assert!(report.is_null());
}
