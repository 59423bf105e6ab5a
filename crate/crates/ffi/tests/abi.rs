use std::ffi::{CStr, CString};
use std::os::raw::c_char;
use std::ptr;

use qring_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take(s: *mut c_char) -> String {
    let out = CStr::from_ptr(s).to_str().unwrap().to_owned();
    qr_string_free(s);
    out
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(qr_last_error()).to_str().unwrap().to_owned() }
}

fn builtin(name: &str) -> *mut QrStructure {
    let mut s = ptr::null_mut();
    let st = unsafe { qr_structure_builtin(c(name).as_ptr(), &mut s) };
    assert_eq!(st, QrStatus::Ok, "{}", last_error());
    s
}

#[test]
fn classify_builtin() {
    let s = builtin("z_padic_3");
    let mut out = ptr::null_mut();
    unsafe {
        assert_eq!(qr_classify(s, &mut out), QrStatus::Ok);
        let doc: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
        assert_eq!(doc["classification"]["branch"], "valued");
        assert_eq!(doc["roundtrip"]["ok"], true);
        qr_structure_free(s);
    }
}

#[test]
fn leq_from_json_structure() {
    let src = c(r#"{"ring":{"kind":"modular","n":12},"relation":{"kind":"trivial_at_prime","generators":[2]}}"#);
    let mut s = ptr::null_mut();
    unsafe {
        assert_eq!(qr_structure_from_json(src.as_ptr(), &mut s), QrStatus::Ok);
        let mut le = false;
        // 4 ∈ (2), 3 ∉ (2): 4 ⪯ 3 but not 3 ⪯ 4.
        assert_eq!(qr_leq(s, c("4").as_ptr(), c("3").as_ptr(), &mut le), QrStatus::Ok);
        assert!(le);
        assert_eq!(qr_leq(s, c("3").as_ptr(), c("4").as_ptr(), &mut le), QrStatus::Ok);
        assert!(!le);
        assert_eq!(qr_leq(s, c("oops").as_ptr(), c("4").as_ptr(), &mut le), QrStatus::InvalidInput);
        assert!(!last_error().is_empty());
        qr_structure_free(s);
    }
}

#[test]
fn axiom_failure_still_reports() {
    let s = builtin("sec3");
    let mut report = ptr::null_mut();
    unsafe {
        assert_eq!(qr_check_axioms(s, &mut report), QrStatus::AxiomFailure);
        assert!(take(report).contains("QR5"));
        let mut out = ptr::null_mut();
        assert_eq!(qr_classify(s, &mut out), QrStatus::AxiomFailure);
        assert!(out.is_null());
        qr_structure_free(s);
    }
}

#[test]
fn enumerate_zmod() {
    let mut count = 0usize;
    let mut out = ptr::null_mut();
    unsafe {
        assert_eq!(qr_enumerate_zmod(30, &mut count, &mut out), QrStatus::Ok);
        assert_eq!(count, 3);
        let doc: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
        assert_eq!(doc["cross_check"]["passed"], true);
    }
}

#[test]
fn null_pointers_and_bad_input() {
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(qr_structure_builtin(ptr::null(), &mut s), QrStatus::NullPointer);
        assert_eq!(qr_structure_builtin(c("z_standard").as_ptr(), ptr::null_mut()), QrStatus::NullPointer);
        assert_eq!(qr_structure_builtin(c("nope").as_ptr(), &mut s), QrStatus::InvalidInput);
        assert!(last_error().contains("nope"));
        assert_eq!(qr_structure_from_json(c("{").as_ptr(), &mut s), QrStatus::InvalidInput);
        let mut out = ptr::null_mut();
        assert_eq!(qr_classify(ptr::null(), &mut out), QrStatus::NullPointer);
        let mut le = false;
        assert_eq!(qr_leq(ptr::null(), c("1").as_ptr(), c("2").as_ptr(), &mut le), QrStatus::NullPointer);
        assert_eq!(qr_enumerate_zmod(6, ptr::null_mut(), &mut out), QrStatus::NullPointer);
        qr_structure_free(ptr::null_mut());
        qr_string_free(ptr::null_mut());
    }
}

#[test]
fn version_and_header() {
    let v = unsafe { CStr::from_ptr(qr_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/qring.h")).unwrap();
    for f in ["qr_structure_builtin", "qr_classify", "qr_leq", "qr_last_error", "QR_STATUS_NULL_POINTER"] {
        assert!(header.contains(f), "{f} missing from header");
    }
}

#[test]
fn header_compiles_as_c() {
    let header = concat!(env!("CARGO_MANIFEST_DIR"), "/include/qring.h");
    let Ok(out) = std::process::Command::new("cc")
        .args(["-fsyntax-only", "-Wall", "-Werror", "-x", "c", header])
        .output()
    else {
        eprintln!("no C compiler; skipping");
        return;
    };
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}
