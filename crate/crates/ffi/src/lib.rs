//! C ABI over the field tables, a few number-theoretic helpers and the
//! family verifier.
//!
//! Every fallible call returns a `CfStatus`; on failure the message is kept
//! per thread and can be read with `cf_last_error`. Strings returned by the
//! library are released with `cf_string_free`, fields with `cf_field_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use cycfusion::families::{FamilyError, FamilySpec};
use cycfusion::ffield::{FieldError, FieldTable};
use cycfusion::numth::{self, NumthError};
use cycfusion::scheme::SchemeError;
use cycfusion::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CfStatus {
    Ok = 0,
    /// Some asserted verdict failed; the report is still returned.
    Refuted = 1,
    NullPointer = 2,
    InvalidArgument = 3,
    NotPrime = 4,
    FieldTooLarge = 5,
    IndexOutOfRange = 6,
    NotCoprime = 7,
    Internal = 8,
}

/// Opaque handle to a materialized GF(p^f).
pub struct CfField {
    table: FieldTable,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn fail(status: CfStatus, msg: impl Into<String>) -> CfStatus {
    set_error(msg);
    status
}

fn field_status(e: &FieldError) -> CfStatus {
    match e {
        FieldError::CompositeCharacteristic(_) => CfStatus::NotPrime,
        FieldError::FieldTooLarge { .. } => CfStatus::FieldTooLarge,
        FieldError::IndexOutOfRange { .. } => CfStatus::IndexOutOfRange,
        _ => CfStatus::InvalidArgument,
    }
}

fn numth_status(e: &NumthError) -> CfStatus {
    match e {
        NumthError::NotCoprime { .. } => CfStatus::NotCoprime,
        _ => CfStatus::InvalidArgument,
    }
}

fn error_status(e: &Error) -> CfStatus {
    match e {
        Error::Field(e) | Error::Family(FamilyError::Field(e)) => field_status(e),
        Error::Numth(e) | Error::Family(FamilyError::Numth(e)) => numth_status(e),
        Error::Scheme(SchemeError::FieldTooLarge { .. })
        | Error::Family(FamilyError::Scheme(SchemeError::FieldTooLarge { .. })) => {
            CfStatus::FieldTooLarge
        }
        _ => CfStatus::InvalidArgument,
    }
}

fn guard(f: impl FnOnce() -> CfStatus) -> CfStatus {
    catch_unwind(AssertUnwindSafe(f))
        .unwrap_or_else(|_| fail(CfStatus::Internal, "panic inside cycfusion"))
}

/// Message for the last failing call on this thread; empty if none. The
/// pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn cf_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Builds GF(p^f) with the canonical modulus.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn cf_field_new(p: u64, f: u64, out: *mut *mut CfField) -> CfStatus {
    if out.is_null() {
        return fail(CfStatus::NullPointer, "out is null");
    }
    guard(|| match FieldTable::build(p, f) {
        Ok(table) => {
            *out = Box::into_raw(Box::new(CfField { table }));
            CfStatus::Ok
        }
        Err(e) => {
            *out = ptr::null_mut();
            fail(field_status(&e), e.to_string())
        }
    })
}

/// # Safety
/// `field` must come from `cf_field_new` and not be freed twice. Null is a no-op.
#[no_mangle]
pub unsafe extern "C" fn cf_field_free(field: *mut CfField) {
    if !field.is_null() {
        drop(Box::from_raw(field));
    }
}

/// Number of elements `q`, or 0 for a null handle.
///
/// # Safety
/// `field` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn cf_field_order(field: *const CfField) -> u32 {
    field.as_ref().map_or(0, |f| f.table.q())
}

/// `Tr(γ^n)` as an integer in `0..p`.
///
/// # Safety
/// `field` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn cf_field_trace(field: *const CfField, n: u32, out: *mut u32) -> CfStatus {
    let (Some(field), false) = (field.as_ref(), out.is_null()) else {
        return fail(CfStatus::NullPointer, "null argument");
    };
    match field.table.trace(n) {
        Ok(t) => {
            *out = t;
            CfStatus::Ok
        }
        Err(e) => fail(field_status(&e), e.to_string()),
    }
}

/// Discrete log of `γ^{n1} + γ^{n2}`; `*is_zero` is set when the sum is 0, in
/// which case `*out` is left untouched.
///
/// # Safety
/// `field` must be a live handle; `out` and `is_zero` writable.
#[no_mangle]
pub unsafe extern "C" fn cf_field_zech_add(
    field: *const CfField,
    n1: u32,
    n2: u32,
    out: *mut u32,
    is_zero: *mut bool,
) -> CfStatus {
    let (Some(field), false, false) = (field.as_ref(), out.is_null(), is_zero.is_null()) else {
        return fail(CfStatus::NullPointer, "null argument");
    };
    match field.table.zech_add(n1, n2) {
        Ok(Some(n)) => {
            *out = n;
            *is_zero = false;
            CfStatus::Ok
        }
        Ok(None) => {
            *is_zero = true;
            CfStatus::Ok
        }
        Err(e) => fail(field_status(&e), e.to_string()),
    }
}

/// Multiplicative order of `a` modulo `n`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cf_mult_order(a: u64, n: u64, out: *mut u64) -> CfStatus {
    if out.is_null() {
        return fail(CfStatus::NullPointer, "out is null");
    }
    guard(|| match numth::mult_order(a, n) {
        Ok(o) => {
            *out = o;
            CfStatus::Ok
        }
        Err(e) => fail(numth_status(&e), e.to_string()),
    })
}

/// Class number of `Q(sqrt(-d))` for squarefree `d > 0`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cf_class_number(d: u64, out: *mut u64) -> CfStatus {
    if out.is_null() {
        return fail(CfStatus::NullPointer, "out is null");
    }
    guard(|| match numth::class_number(d) {
        Ok(h) => {
            *out = h;
            CfStatus::Ok
        }
        Err(e) => fail(numth_status(&e), e.to_string()),
    })
}

/// Runs the full verification of a family member (`"A:p,p1,p2"` or
/// `"B:p,p1"`) and hands back the JSON report. Returns `Ok` when every
/// verdict holds and `Refuted` otherwise; in both cases `*json_out` owns a
/// string to be released with `cf_string_free`.
///
/// # Safety
/// `family` must be a NUL-terminated string; `json_out` writable.
#[no_mangle]
pub unsafe extern "C" fn cf_verify_family(
    family: *const c_char,
    m: u32,
    json_out: *mut *mut c_char,
) -> CfStatus {
    if family.is_null() || json_out.is_null() {
        return fail(CfStatus::NullPointer, "null argument");
    }
    *json_out = ptr::null_mut();
    let Ok(family) = CStr::from_ptr(family).to_str() else {
        return fail(CfStatus::InvalidArgument, "family id is not UTF-8");
    };
    guard(|| {
        let report = FamilySpec::parse_id(family, m)
            .map_err(Error::from)
            .and_then(|fam| cycfusion::cli::family_report(&fam, None));
        match report {
            Ok(report) => {
                let Ok(s) = CString::new(report.to_json()) else {
                    return fail(CfStatus::Internal, "report contains NUL");
                };
                *json_out = s.into_raw();
                if report.passed {
                    CfStatus::Ok
                } else {
                    fail(CfStatus::Refuted, "some verdict does not hold")
                }
            }
            Err(e) => fail(error_status(&e), e.to_string()),
        }
    })
}

/// # Safety
/// `s` must come from this library and not be freed twice. Null is a no-op.
#[no_mangle]
pub unsafe extern "C" fn cf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
