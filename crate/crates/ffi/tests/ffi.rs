use std::ffi::{c_char, CStr, CString};
use std::ptr;

use qball_ffi::*;

fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let text = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { qball_string_free(s) };
    text
}

fn last_error() -> String {
    let p = qball_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string()
}

#[test]
fn version_matches_the_crate() {
    let v = unsafe { CStr::from_ptr(qball_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn expand_and_inspect_a_series() {
    let mut h = ptr::null_mut();
    let st = unsafe { qball_series_expand(1, 1, 3, ptr::null(), false, &mut h) };
    assert_eq!(st, QballStatus::Ok);
    assert!(qball_last_error().is_null());
    unsafe {
        assert_eq!(qball_series_degree(h), 3);
        assert_eq!(qball_series_term_count(h, 2), 1);
        assert_eq!(qball_series_term_count(h, 9), 0);

        let mut json = ptr::null_mut();
        assert_eq!(qball_series_to_json(h, &mut json), QballStatus::Ok);
        let doc: serde_json::Value = serde_json::from_str(&take(json)).unwrap();
        assert_eq!(doc["terms"][1]["entries"][0]["coeff"], "(1-l)/(1-q^2)");

        // disc, lambda = 2, q = 1/2: coefficient of degree 1 is 1 + q^2
        let (q, l) = (CString::new("1/2").unwrap(), CString::new("2").unwrap());
        let mut dim = 0usize;
        let st = qball_series_coefficient_matrix(h, 1, q.as_ptr(), l.as_ptr(), ptr::null_mut(), 0, &mut dim);
        assert_eq!(st, QballStatus::BufferTooSmall);
        assert_eq!(dim, 1);
        let mut buf = [0.0f64; 1];
        let st = qball_series_coefficient_matrix(h, 1, q.as_ptr(), l.as_ptr(), buf.as_mut_ptr(), 1, &mut dim);
        assert_eq!(st, QballStatus::Ok);
        assert!((buf[0] - 1.25).abs() < 1e-15);
        qball_series_free(h);
    }
}

#[test]
fn ordinary_and_fixed_lambda_agree() {
    let two = CString::new("2").unwrap();
    let (mut a, mut b) = (ptr::null_mut(), ptr::null_mut());
    unsafe {
        assert_eq!(qball_series_expand(1, 1, 2, ptr::null(), true, &mut a), QballStatus::Ok);
        assert_eq!(qball_series_expand(1, 1, 2, two.as_ptr(), false, &mut b), QballStatus::Ok);
        let (mut ja, mut jb) = (ptr::null_mut(), ptr::null_mut());
        qball_series_to_json(a, &mut ja);
        qball_series_to_json(b, &mut jb);
        let da: serde_json::Value = serde_json::from_str(&take(ja)).unwrap();
        let db: serde_json::Value = serde_json::from_str(&take(jb)).unwrap();
        assert_eq!(da["terms"], db["terms"]);
        qball_series_free(a);
        qball_series_free(b);
    }
}

#[test]
fn errors_map_to_status_codes() {
    let mut h = ptr::null_mut();
    unsafe {
        assert_eq!(qball_series_expand(2, 1, 1, ptr::null(), false, &mut h), QballStatus::InvalidArgument);
        assert!(!last_error().is_empty());
        assert!(h.is_null());
        assert_eq!(qball_series_expand(1, 1, 1, ptr::null(), false, ptr::null_mut()), QballStatus::NullPointer);
        let third = CString::new("1/3").unwrap();
        assert_eq!(qball_series_expand(1, 1, 1, third.as_ptr(), false, &mut h), QballStatus::InvalidArgument);
        assert_eq!(qball_series_to_json(ptr::null(), &mut ptr::null_mut()), QballStatus::NullPointer);
        assert_eq!(qball_series_degree(ptr::null()), 0);
        qball_series_free(ptr::null_mut());
        qball_string_free(ptr::null_mut());
    }
}

#[test]
fn gram_json_for_the_disc() {
    let (l, q) = (CString::new("3").unwrap(), CString::new("1/2").unwrap());
    let mut out = ptr::null_mut();
    let st = unsafe { qball_gram_json(1, 1, 1, l.as_ptr(), q.as_ptr(), ptr::null(), &mut out) };
    assert_eq!(st, QballStatus::Ok);
    let doc: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
    let g1 = doc["blocks"][1]["approx"][0][0].as_f64().unwrap();
    assert!((g1 - 16.0 / 21.0).abs() < 1e-9);

    let bad = CString::new("1").unwrap();
    let st = unsafe { qball_gram_json(1, 1, 1, bad.as_ptr(), q.as_ptr(), ptr::null(), &mut out) };
    assert_eq!(st, QballStatus::InvalidArgument);
}

#[test]
fn truncation_failure_is_a_computation_error() {
    let (l, q) = (CString::new("2").unwrap(), CString::new("99/100").unwrap());
    let tol = CString::new(format!("1/1{}", "0".repeat(40))).unwrap();
    let mut out = ptr::null_mut();
    let st = unsafe { qball_gram_json(1, 1, 0, l.as_ptr(), q.as_ptr(), tol.as_ptr(), &mut out) };
    assert_eq!(st, QballStatus::ComputationFailed);
    assert!(last_error().contains("did not stabilize"));
}

#[test]
fn verify_suite_report() {
    let suite = CString::new("kernels").unwrap();
    let mut out = ptr::null_mut();
    let st = unsafe { qball_verify(suite.as_ptr(), 1, 1, 2, ptr::null(), ptr::null(), &mut out) };
    assert_eq!(st, QballStatus::Ok);
    let doc: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
    assert_eq!(doc["passed"], true);

    let unknown = CString::new("everything").unwrap();
    let st = unsafe { qball_verify(unknown.as_ptr(), 1, 1, 2, ptr::null(), ptr::null(), &mut out) };
    assert_eq!(st, QballStatus::InvalidArgument);
}

#[test]
fn header_declares_the_api() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/qball.h")).unwrap();
    for name in [
        "qball_version",
        "qball_last_error",
        "qball_string_free",
        "qball_series_expand",
        "qball_series_free",
        "qball_series_degree",
        "qball_series_term_count",
        "qball_series_to_json",
        "qball_series_coefficient_matrix",
        "qball_gram_json",
        "qball_verify",
        "typedef struct QballSeries QballSeries",
        "QBALL_STATUS_VERIFICATION_FAILED = 4",
    ] {
        assert!(header.contains(name), "missing {name}");
    }
}
