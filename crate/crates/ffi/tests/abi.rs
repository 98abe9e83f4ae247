use std::ffi::{CStr, CString};
use std::ptr;

use deltahall_ffi::*;
use serde_json::Value;

const A1: &str = r#"{"vertices": 1, "arrows": []}"#;
const A2: &str = r#"{"vertices": 2, "arrows": [[0, 1]]}"#;

fn engine(quiver: &str, q: u64, d: u32) -> *mut DhEngine {
    let src = CString::new(quiver).unwrap();
    let mut e = ptr::null_mut();
    let s = unsafe { dh_engine_new(src.as_ptr(), q, d, &mut e) };
    assert_eq!(s, DhStatus::Ok);
    assert!(!e.is_null());
    e
}

fn take(s: *mut std::ffi::c_char) -> Value {
    let v = serde_json::from_str(unsafe { CStr::from_ptr(s) }.to_str().unwrap()).unwrap();
    unsafe { dh_string_free(s) };
    v
}

fn last_error() -> String {
    let p = dh_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn a1_delta_coefficients() {
    let e = engine(A1, 2, 2);
    let mut n = 0;
    assert_eq!(unsafe { dh_engine_class_count(e, &mut n) }, DhStatus::Ok);
    assert_eq!(n, 3);
    // classes: 0, S, S^2
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { dh_engine_delta_hall_number(e, 1, 1, 2, &mut out) }, DhStatus::Ok);
    assert_eq!(take(out), serde_json::json!({"a": "0/1", "b": "1/4"}));
    assert_eq!(unsafe { dh_engine_delta_hall_number(e, 1, 1, 0, &mut out) }, DhStatus::Ok);
    assert_eq!(take(out), serde_json::json!({"a": "0/1", "b": "1/1"}));
    let mut h = 0;
    assert_eq!(unsafe { dh_engine_hall_number(e, 1, 1, 2, &mut h) }, DhStatus::Ok);
    assert_eq!(h, 3);
    unsafe { dh_engine_free(e) };
}

#[test]
fn tables_and_catalog() {
    let e = engine(A2, 2, 2);
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { dh_engine_catalog_json(e, &mut out) }, DhStatus::Ok);
    let cat = take(out);
    assert!(cat.to_string().contains("classes") || cat.is_array() || cat.is_object());
    let which = CString::new("hall").unwrap();
    assert_eq!(unsafe { dh_engine_table_json(e, which.as_ptr(), &mut out) }, DhStatus::Ok);
    let rows = take(out);
    assert!(rows.as_array().unwrap().iter().any(|r| r["a"] == 2 && r["b"] == 1 && r["m"] == 5));
    let bad = CString::new("nope").unwrap();
    assert_eq!(unsafe { dh_engine_table_json(e, bad.as_ptr(), &mut out) }, DhStatus::Config);
    assert!(last_error().contains("nope"));
    unsafe { dh_engine_free(e) };
}

#[test]
fn checks_report() {
    let e = engine(A2, 2, 2);
    let suite = CString::new("green").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { dh_engine_run_check(e, suite.as_ptr(), &mut out) }, DhStatus::Ok);
    assert_eq!(take(out)["passed"], true);
    let rank2 = CString::new("rank2").unwrap();
    assert_eq!(unsafe { dh_engine_run_check(e, rank2.as_ptr(), &mut out) }, DhStatus::Config);
    assert!(out.is_null());
    unsafe { dh_engine_free(e) };
}

#[test]
fn error_codes() {
    let src = CString::new(A1).unwrap();
    let mut e = ptr::null_mut();
    assert_eq!(unsafe { dh_engine_new(src.as_ptr(), 4, 2, &mut e) }, DhStatus::Config);
    assert!(e.is_null());
    assert!(last_error().contains('4'));
    assert_eq!(unsafe { dh_engine_new(ptr::null(), 2, 2, &mut e) }, DhStatus::NullPointer);
    let junk = CString::new("{").unwrap();
    assert_eq!(unsafe { dh_engine_new(junk.as_ptr(), 2, 2, &mut e) }, DhStatus::Config);
    let cyc = CString::new(r#"{"vertices": 1, "arrows": [[0, 0]]}"#).unwrap();
    assert_eq!(unsafe { dh_engine_new(cyc.as_ptr(), 2, 2, &mut e) }, DhStatus::Config);

    let e = engine(A1, 2, 1);
    let mut h = 0;
    assert_eq!(unsafe { dh_engine_hall_number(e, 0, 0, 9, &mut h) }, DhStatus::OutOfRange);
    assert_eq!(unsafe { dh_engine_hall_number(ptr::null(), 0, 0, 0, &mut h) }, DhStatus::NullPointer);
    assert_eq!(unsafe { dh_engine_hall_number(e, 0, 0, 0, ptr::null_mut()) }, DhStatus::NullPointer);
    assert_eq!(unsafe { dh_engine_hall_number(e, 0, 0, 0, &mut h) }, DhStatus::Ok);
    assert!(dh_last_error_message().is_null());
    unsafe {
        dh_engine_free(e);
        dh_engine_free(ptr::null_mut());
        dh_string_free(ptr::null_mut());
    }
}
