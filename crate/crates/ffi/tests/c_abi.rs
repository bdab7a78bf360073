use std::ffi::{c_char, CStr};
use std::ptr;

use altgen_ffi::*;

fn last_error() -> Option<String> {
    let p = altgen_last_error();
    (!p.is_null()).then(|| unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned())
}

#[test]
fn engine_lifecycle_and_dimensions() {
    let engine = altgen_engine_new(7, 0);
    assert!(!engine.is_null());
    let mut dim = 0u64;
    let status = unsafe { altgen_dim_m(engine, 4, 3, 2, &mut dim) };
    assert_eq!(status, AltgenStatus::Ok);
    assert_eq!(dim, 1);
    assert!(last_error().is_none());
    let status = unsafe { altgen_dim_m(engine, 0, 0, 0, &mut dim) };
    assert_eq!(status, AltgenStatus::InvalidArgument);
    assert!(last_error().unwrap().contains("point"));
    unsafe { altgen_engine_free(engine) };
    unsafe { altgen_engine_free(ptr::null_mut()) };
}

#[test]
fn projected_engine_agrees() {
    let full = altgen_engine_new(7, 0);
    let proj = altgen_engine_new(7, 1);
    for (d1, d2) in [(2, 2), (3, 1), (1, 2), (4, 0)] {
        let (mut a, mut b) = (0u64, 0u64);
        unsafe {
            assert_eq!(altgen_dim_m(full, 4, d1, d2, &mut a), AltgenStatus::Ok);
            assert_eq!(altgen_dim_m(proj, 4, d1, d2, &mut b), AltgenStatus::Ok);
        }
        assert_eq!(a, b, "({d1},{d2})");
    }
    unsafe {
        altgen_engine_free(full);
        altgen_engine_free(proj);
    }
}

#[test]
fn null_pointers_are_reported() {
    let mut dim = 0u64;
    let status = unsafe { altgen_dim_m(ptr::null(), 3, 1, 1, &mut dim) };
    assert_eq!(status, AltgenStatus::NullPointer);
    assert!(last_error().is_some());
    let status = unsafe { altgen_qt_coefficient(3, 1, 1, ptr::null_mut()) };
    assert_eq!(status, AltgenStatus::NullPointer);
}

#[test]
fn catalan_polynomial() {
    let mut c = 0u64;
    assert_eq!(
        unsafe { altgen_qt_coefficient(3, 1, 1, &mut c) },
        AltgenStatus::Ok
    );
    assert_eq!(c, 1);
    let mut s: *mut c_char = ptr::null_mut();
    assert_eq!(unsafe { altgen_qt_json(4, &mut s) }, AltgenStatus::Ok);
    let json = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { altgen_string_free(s) };
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["n"], 4);
    let total: u64 = v["coeffs"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| t[2].as_u64().unwrap())
        .sum();
    assert_eq!(total, 14);
}

#[test]
fn generator_report() {
    let engine = altgen_engine_new(7, 0);
    let mut passed = -1;
    let mut s: *mut c_char = ptr::null_mut();
    assert_eq!(
        unsafe { altgen_conj41(engine, 4, &mut passed, &mut s) },
        AltgenStatus::Ok
    );
    assert_eq!(passed, 1);
    let json = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { altgen_string_free(s) };
    assert!(json.contains(r#""verdict":"PASS""#));
    passed = -1;
    assert_eq!(
        unsafe { altgen_conj41(engine, 3, &mut passed, ptr::null_mut()) },
        AltgenStatus::Ok
    );
    assert_eq!(passed, 1);
    unsafe { altgen_engine_free(engine) };
}

#[test]
fn header_declares_the_surface() {
    let header = include_str!("../include/altgen.h");
    for name in [
        "ALTGEN_H",
        "typedef struct AltgenEngine AltgenEngine",
        "ALTGEN_STATUS_OK = 0",
        "ALTGEN_STATUS_COMPUTATION",
        "altgen_engine_new",
        "altgen_engine_free",
        "altgen_dim_m",
        "altgen_qt_coefficient",
        "altgen_qt_json",
        "altgen_conj41",
        "altgen_string_free",
        "altgen_last_error",
    ] {
        assert!(header.contains(name), "missing {name}");
    }
}
