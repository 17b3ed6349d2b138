use std::ffi::{CStr, CString};
use std::ptr;

use sympair_ffi::*;

fn ring(p: u32, n: u64, s: u32, beta: Option<&str>) -> *mut SpRing {
    let beta = beta.map(|b| CString::new(b).unwrap());
    let mut out = ptr::null_mut();
    let status = unsafe {
        sp_ring_new(p, 1, n, s, ptr::null(), beta.as_ref().map_or(ptr::null(), |b| b.as_ptr()), &mut out)
    };
    assert_eq!(status, SpStatus::Ok);
    out
}

fn code(ring: *const SpRing, spec: &str) -> Result<*mut SpCode, SpStatus> {
    let spec = CString::new(spec).unwrap();
    let mut out = ptr::null_mut();
    match unsafe { sp_code_new(ring, spec.as_ptr(), &mut out) } {
        SpStatus::Ok => Ok(out),
        e => Err(e),
    }
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(sp_last_error_message()) }.to_string_lossy().into_owned()
}

fn report() -> SpDistanceReport {
    SpDistanceReport { d_sp: 0, d_h: 0, blocks: 0, method: SpMethod::ClosedForm, words_examined: 0 }
}

#[test]
fn field_code_distance_matches_formula() {
    let r = ring(3, 1, 2, None);
    assert_eq!(unsafe { sp_ring_length(r) }, 9);
    let c = code(r, "field-power:i=4").unwrap();
    assert_eq!(unsafe { sp_code_dim_p(c) }, 5);

    let mut brute = report();
    let mut formula = report();
    unsafe {
        assert_eq!(sp_code_distance(c, 1 << 16, 0, true, &mut brute), SpStatus::Ok);
        assert_eq!(sp_code_formula_distance(c, &mut formula), SpStatus::Ok);
    }
    assert_eq!(brute.method, SpMethod::Exhaustive);
    assert_eq!(formula.method, SpMethod::ClosedForm);
    assert_eq!((brute.d_sp, brute.d_h), (formula.d_sp, formula.d_h));
    assert_eq!(brute.words_examined, 3u64.pow(5));
    assert!(brute.blocks >= 1);

    unsafe {
        sp_code_free(c);
        sp_ring_free(r);
    }
}

#[test]
fn chain_code_and_json() {
    let r = ring(3, 1, 2, Some("0"));
    let c = code(r, "type2:j=7,k=1,b=1").unwrap();
    let mut json = ptr::null_mut();
    unsafe {
        assert_eq!(sp_code_distance_json(c, 1 << 16, 0, &mut json), SpStatus::Ok);
        let text = CStr::from_ptr(json).to_str().unwrap().to_owned();
        sp_string_free(json);
        assert!(text.contains("\"d_sp\":4"), "{text}");
        assert!(text.contains("\"method\":\"exhaustive\""), "{text}");
        sp_code_free(c);
        sp_ring_free(r);
    }
}

#[test]
fn budget_exceeded_under_exact() {
    let r = ring(3, 1, 2, None);
    let c = code(r, "field-power:i=1").unwrap();
    let mut out = report();
    unsafe {
        assert_eq!(sp_code_distance(c, 10, 0, true, &mut out), SpStatus::BudgetExceeded);
        assert_eq!(sp_code_distance(c, 10, 0, false, &mut out), SpStatus::Ok);
        sp_code_free(c);
        sp_ring_free(r);
    }
    assert_eq!(out.method, SpMethod::UpperBound);
    assert!(!last_error().is_empty());
}

#[test]
fn errors_map_to_status_codes() {
    let mut out = ptr::null_mut();
    let status = unsafe { sp_ring_new(4, 1, 1, 1, ptr::null(), ptr::null(), &mut out) };
    assert_eq!(status, SpStatus::NotPrime);
    assert!(out.is_null());
    assert!(!last_error().is_empty());

    let r = ring(3, 1, 1, None);
    assert_eq!(code(r, "field-power:i=99").unwrap_err(), SpStatus::ConstraintViolation);
    assert_eq!(code(r, "nonsense").unwrap_err(), SpStatus::Parse);
    assert_eq!(unsafe { sp_code_new(r, ptr::null(), &mut ptr::null_mut()) }, SpStatus::NullPointer);
    let bad = [0x66u8, 0xff, 0];
    assert_eq!(
        unsafe { sp_code_new(r, bad.as_ptr().cast(), &mut ptr::null_mut()) },
        SpStatus::InvalidUtf8
    );
    let c = code(r, "field-power:i=0").unwrap();
    assert_eq!(unsafe { sp_code_formula_distance(c, ptr::null_mut()) }, SpStatus::NullPointer);
    unsafe {
        sp_code_free(c);
        sp_ring_free(r);
        sp_ring_free(ptr::null_mut());
        sp_code_free(ptr::null_mut());
        sp_string_free(ptr::null_mut());
    }
}

#[test]
fn pair_weight_and_version() {
    let word = [1u32, 0, 0, 2, 2, 0];
    let mut w = 0usize;
    assert_eq!(unsafe { sp_pair_weight(word.as_ptr(), word.len(), &mut w) }, SpStatus::Ok);
    assert_eq!(w, 5);
    let v = unsafe { CStr::from_ptr(sp_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_declares_every_export() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/sympair.h")).unwrap();
    let source = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/src/lib.rs")).unwrap();
    let exports: Vec<&str> = source
        .lines()
        .filter_map(|l| l.split("extern \"C\" fn ").nth(1))
        .map(|rest| rest.split('(').next().unwrap())
        .collect();
    assert!(exports.len() >= 12);
    for name in exports {
        assert!(header.contains(&format!("{name}(")), "{name} missing from header");
    }
    assert!(header.contains("SP_STATUS_BUDGET_EXCEEDED = 102"));
    assert!(header.contains("typedef struct SpRing SpRing;"));
}
