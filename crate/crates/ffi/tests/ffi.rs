use std::ffi::{CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use cycfusion_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(cf_last_error()) }
        .to_string_lossy()
        .into_owned()
}

#[test]
fn field_round_trip() {
    let mut field = ptr::null_mut();
    unsafe {
        assert_eq!(cf_field_new(2, 3, &mut field), CfStatus::Ok);
        assert_eq!(cf_field_order(field), 8);

        let (mut out, mut zero) = (0u32, false);
        assert_eq!(
            cf_field_zech_add(field, 0, 1, &mut out, &mut zero),
            CfStatus::Ok
        );
        assert_eq!((out, zero), (3, false));
        assert_eq!(
            cf_field_zech_add(field, 4, 4, &mut out, &mut zero),
            CfStatus::Ok
        );
        assert!(zero);

        let mut t = 9u32;
        assert_eq!(cf_field_trace(field, 0, &mut t), CfStatus::Ok);
        assert_eq!(t, 1);
        assert_eq!(cf_field_trace(field, 7, &mut t), CfStatus::IndexOutOfRange);
        assert!(!last_error().is_empty());
        cf_field_free(field);
    }
}

#[test]
fn field_errors() {
    let mut field = ptr::null_mut();
    unsafe {
        assert_eq!(cf_field_new(6, 2, &mut field), CfStatus::NotPrime);
        assert!(field.is_null());
        assert!(last_error().contains("not prime"));
        assert_eq!(cf_field_new(2, 30, &mut field), CfStatus::FieldTooLarge);
        assert_eq!(cf_field_new(2, 3, ptr::null_mut()), CfStatus::NullPointer);
        assert_eq!(cf_field_order(ptr::null()), 0);
        cf_field_free(ptr::null_mut());
    }
}

#[test]
fn number_theory() {
    let mut out = 0u64;
    unsafe {
        assert_eq!(cf_mult_order(2, 45, &mut out), CfStatus::Ok);
        assert_eq!(out, 12);
        assert_eq!(cf_mult_order(3, 45, &mut out), CfStatus::NotCoprime);
        assert_eq!(cf_class_number(15, &mut out), CfStatus::Ok);
        assert_eq!(out, 2);
        assert_eq!(cf_class_number(12, &mut out), CfStatus::InvalidArgument);
    }
}

#[test]
fn verify_family_returns_json() {
    let id = CString::new("A:2,3,5").unwrap();
    let mut json = ptr::null_mut();
    unsafe {
        assert_eq!(cf_verify_family(id.as_ptr(), 1, &mut json), CfStatus::Ok);
        assert!(!json.is_null());
        let text = CStr::from_ptr(json).to_str().unwrap().to_owned();
        cf_string_free(json);
        let report = cycfusion::report::RunReport::from_json(&text).unwrap();
        assert!(report.passed);
        assert_eq!(report.version, cycfusion::report::REPORT_VERSION);
    }
}

#[test]
fn verify_family_errors() {
    let mut json = ptr::null_mut();
    unsafe {
        let bad = CString::new("C:1").unwrap();
        assert_eq!(
            cf_verify_family(bad.as_ptr(), 1, &mut json),
            CfStatus::InvalidArgument
        );
        assert!(json.is_null());
        let big = CString::new("A:2,3,5").unwrap();
        assert_eq!(
            cf_verify_family(big.as_ptr(), 9, &mut json),
            CfStatus::FieldTooLarge
        );
        assert_eq!(
            cf_verify_family(ptr::null(), 1, &mut json),
            CfStatus::NullPointer
        );
    }
}

#[test]
fn header_declares_every_export() {
    let header = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/cycfusion.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for name in [
        "cf_last_error",
        "cf_field_new",
        "cf_field_free",
        "cf_field_order",
        "cf_field_trace",
        "cf_field_zech_add",
        "cf_mult_order",
        "cf_class_number",
        "cf_verify_family",
        "cf_string_free",
        "typedef struct CfField CfField",
        "CF_STATUS_FIELD_TOO_LARGE = 5",
    ] {
        assert!(text.contains(name), "{name} missing from header");
    }
    // the header must also parse as C when a compiler is around
    if let Ok(status) = Command::new("cc")
        .args(["-fsyntax-only", "-x", "c", "-std=c99", "-Wall", "-Werror"])
        .arg(&header)
        .status()
    {
        assert!(status.success());
    }
}
