//! C ABI over the quasi-ordered ring kernel.
//!
//! Structures live behind an opaque [`QrStructure`] handle. Every entry
//! point returns a [`QrStatus`]; on failure a message is kept per thread and
//! read with [`qr_last_error`]. Strings returned through out-parameters are
//! owned by the caller and released with [`qr_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use qring::classifier::{classify, roundtrip_check};
use qring::gallery::builtin;
use qring::model_finder::{cross_check_dichotomy, enumerate_quasiorders};
use qring::structure::parse_structure;
use qring::{check_axioms, Error, Relation, Ring, Window};
use serde_json::json;

/// Result codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QrStatus {
    Ok = 0,
    /// The relation fails an axiom; the report is still returned.
    AxiomFailure = 1,
    InvalidInput = 2,
    NullPointer = 3,
    Unsupported = 4,
    Internal = 5,
}

/// A ring, a relation on it and a window.
pub struct QrStructure {
    relation: Relation,
    window: Window,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> QrStatus {
    match e {
        Error::RejectedInput(_) => QrStatus::AxiomFailure,
        Error::Unsupported(_) | Error::Limit(_) => QrStatus::Unsupported,
        Error::Inconsistency { .. } => QrStatus::Internal,
        _ => QrStatus::InvalidInput,
    }
}

/// Runs `f`, mapping errors and panics to status codes.
fn guard(f: impl FnOnce() -> Result<QrStatus, (QrStatus, String)>) -> QrStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(s)) => {
            set_error("");
            s
        }
        Ok(Err((s, msg))) => {
            set_error(&msg);
            s
        }
        Err(_) => {
            set_error("internal panic");
            QrStatus::Internal
        }
    }
}

fn fail(e: Error) -> (QrStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (QrStatus, String) {
    (QrStatus::NullPointer, format!("{what} is null"))
}

/// # Safety
/// `s` is null or a valid NUL-terminated string.
unsafe fn read_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, (QrStatus, String)> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| (QrStatus::InvalidInput, format!("{what} is not UTF-8")))
}

/// # Safety
/// `out` is null or valid for writes.
unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), (QrStatus, String)> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    let c = CString::new(s).map_err(|_| (QrStatus::Internal, "interior NUL".to_string()))?;
    *out = c.into_raw();
    Ok(())
}

/// # Safety
/// `out` is null or valid for writes.
unsafe fn write_handle(out: *mut *mut QrStructure, s: QrStructure) -> Result<QrStatus, (QrStatus, String)> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    *out = Box::into_raw(Box::new(s));
    Ok(QrStatus::Ok)
}

/// Parses a structure document (ring, relation, optional window).
///
/// # Safety
/// `json` is a NUL-terminated string; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qr_structure_from_json(json: *const c_char, out: *mut *mut QrStructure) -> QrStatus {
    guard(|| {
        let src = read_str(json, "json")?;
        let s = parse_structure(src).map_err(fail)?;
        write_handle(
            out,
            QrStructure {
                relation: s.relation,
                window: s.window,
            },
        )
    })
}

/// Looks up a builtin structure by name.
///
/// # Safety
/// `name` is a NUL-terminated string; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qr_structure_builtin(name: *const c_char, out: *mut *mut QrStructure) -> QrStatus {
    guard(|| {
        let b = builtin(read_str(name, "name")?).map_err(fail)?;
        write_handle(
            out,
            QrStructure {
                relation: b.relation,
                window: b.window,
            },
        )
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `s` is null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qr_structure_free(s: *mut QrStructure) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Compares two elements given as JSON (`"3"`, `"\"X^2\""`, ...).
///
/// # Safety
/// `s` is a live handle; `x`, `y` are NUL-terminated; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn qr_leq(
    s: *const QrStructure,
    x: *const c_char,
    y: *const c_char,
    out: *mut bool,
) -> QrStatus {
    guard(|| {
        let s = s.as_ref().ok_or_else(|| null("structure"))?;
        if out.is_null() {
            return Err(null("output pointer"));
        }
        let ring = s.relation.ring();
        let parse = |p: *const c_char, what: &str| -> Result<qring::Elem, (QrStatus, String)> {
            let src = read_str(p, what)?;
            let v: serde_json::Value =
                serde_json::from_str(src).map_err(|e| (QrStatus::InvalidInput, format!("{what}: {e}")))?;
            ring.parse_elem(&v).map_err(fail)
        };
        let (a, b) = (parse(x, "x")?, parse(y, "y")?);
        *out = s.relation.leq(&a, &b).map_err(fail)?;
        Ok(QrStatus::Ok)
    })
}

/// Checks the axioms on the structure's window. Writes the report as JSON
/// and returns `AxiomFailure` when an axiom fails.
///
/// # Safety
/// `s` is a live handle; `report` is writable.
#[no_mangle]
pub unsafe extern "C" fn qr_check_axioms(s: *const QrStructure, report: *mut *mut c_char) -> QrStatus {
    guard(|| {
        let s = s.as_ref().ok_or_else(|| null("structure"))?;
        let r = check_axioms(&s.relation, &s.window).map_err(fail)?;
        write_string(report, r.to_json().to_string())?;
        Ok(if r.all_pass() {
            QrStatus::Ok
        } else {
            QrStatus::AxiomFailure
        })
    })
}

/// Classifies the structure and runs the round trip. Writes
/// `{"classification": ..., "roundtrip": ...}`; a relation failing the
/// axioms gives `AxiomFailure` and writes nothing.
///
/// # Safety
/// `s` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn qr_classify(s: *const QrStructure, out: *mut *mut c_char) -> QrStatus {
    guard(|| {
        let s = s.as_ref().ok_or_else(|| null("structure"))?;
        let c = classify(&s.relation, &s.window).map_err(fail)?;
        let rt = roundtrip_check(&s.relation, &c).map_err(fail)?;
        let doc = json!({
            "classification": c.to_json(),
            "roundtrip": rt.to_json(s.relation.ring()),
        });
        write_string(out, doc.to_string())?;
        Ok(QrStatus::Ok)
    })
}

/// Enumerates the quasi-orders on `Z/n` and cross-checks them against the
/// prime ideals. `count` receives the number found.
///
/// # Safety
/// `count` and `out` are writable.
#[no_mangle]
pub unsafe extern "C" fn qr_enumerate_zmod(n: u64, count: *mut usize, out: *mut *mut c_char) -> QrStatus {
    guard(|| {
        if count.is_null() {
            return Err(null("count"));
        }
        let ring = Ring::modular(n).map_err(fail)?;
        let e = enumerate_quasiorders(&ring).map_err(fail)?;
        let report = cross_check_dichotomy(&e).map_err(fail)?;
        let doc = json!({
            "count": e.quasiorders.len(),
            "exhaustive": e.exhaustive,
            "cross_check": report.to_json(&ring),
        });
        write_string(out, doc.to_string())?;
        *count = e.quasiorders.len();
        Ok(QrStatus::Ok)
    })
}

/// Message for the last failing call on this thread, or an empty string.
/// Valid until the next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn qr_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` is null or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qr_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Library version, statically allocated.
#[no_mangle]
pub extern "C" fn qr_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

