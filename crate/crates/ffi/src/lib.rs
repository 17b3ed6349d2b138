//! C ABI over `sympair`.
//!
//! Objects are opaque handles created by `sp_*_new` and released with the
//! matching `sp_*_free`. Every fallible call returns an [`SpStatus`]; on failure
//! [`sp_last_error_message`] describes the error for the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::Arc;

use sympair::pairmetric::{self, min_distance_brute, Method, Metric, OracleOptions};
use sympair::{theory, Base, CodeSpec, ConstacyclicCode, Error, Field, Gf, QuotientRing};

/// Result of every fallible call. Values 1 to 19 mirror the library's error kinds.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpStatus {
    Ok = 0,
    NotPrime = 1,
    ReducibleModulus = 2,
    DegreeMismatch = 3,
    FieldTooLarge = 4,
    DivisionByZero = 5,
    FieldMismatch = 6,
    ZeroElement = 7,
    NonUnit = 8,
    RingMismatch = 9,
    ExponentOutOfRange = 10,
    ZeroPolynomial = 11,
    ConstraintViolation = 12,
    BetaMismatch = 13,
    NotUnitNorZero = 14,
    NotChainCode = 15,
    LengthTooShort = 16,
    DegenerateInput = 17,
    ConstructionRefused = 18,
    Parse = 19,
    NullPointer = 100,
    InvalidUtf8 = 101,
    BudgetExceeded = 102,
    Panic = 103,
}

impl From<&Error> for SpStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::NotPrime(_) => SpStatus::NotPrime,
            Error::ReducibleModulus(_) => SpStatus::ReducibleModulus,
            Error::DegreeMismatch { .. } => SpStatus::DegreeMismatch,
            Error::FieldTooLarge { .. } => SpStatus::FieldTooLarge,
            Error::DivisionByZero => SpStatus::DivisionByZero,
            Error::FieldMismatch(_) => SpStatus::FieldMismatch,
            Error::ZeroElement => SpStatus::ZeroElement,
            Error::NonUnit => SpStatus::NonUnit,
            Error::RingMismatch => SpStatus::RingMismatch,
            Error::ExponentOutOfRange { .. } => SpStatus::ExponentOutOfRange,
            Error::ZeroPolynomial => SpStatus::ZeroPolynomial,
            Error::ConstraintViolation(_) => SpStatus::ConstraintViolation,
            Error::BetaMismatch(_) => SpStatus::BetaMismatch,
            Error::NotUnitNorZero => SpStatus::NotUnitNorZero,
            Error::NotChainCode => SpStatus::NotChainCode,
            Error::LengthTooShort(_) => SpStatus::LengthTooShort,
            Error::DegenerateInput(_) => SpStatus::DegenerateInput,
            Error::ConstructionRefused(_) => SpStatus::ConstructionRefused,
            Error::Parse(_) => SpStatus::Parse,
        }
    }
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpMethod {
    ClosedForm = 0,
    Exhaustive = 1,
    UpperBound = 2,
}

/// Minimum distances of a code.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SpDistanceReport {
    pub d_sp: u64,
    pub d_h: u64,
    /// Number of runs in the witness support, or -1 when undefined.
    pub blocks: i64,
    pub method: SpMethod,
    pub words_examined: u64,
}

/// A quotient ring `F` or `R`.
pub struct SpRing(Arc<QuotientRing>);

/// A code materialized inside a ring.
pub struct SpCode(ConstacyclicCode);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

struct Fail(SpStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(SpStatus::from(&e), e.to_string())
    }
}

fn guard(body: impl FnOnce() -> Result<(), Fail>) -> SpStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => SpStatus::Ok,
        Ok(Err(Fail(status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            SpStatus::Panic
        }
    }
}

fn null(what: &str) -> Fail {
    Fail(SpStatus::NullPointer, format!("{what} is null"))
}

unsafe fn opt_str<'a>(p: *const c_char) -> Result<Option<&'a str>, Fail> {
    if p.is_null() {
        return Ok(None);
    }
    CStr::from_ptr(p)
        .to_str()
        .map(Some)
        .map_err(|e| Fail(SpStatus::InvalidUtf8, e.to_string()))
}

unsafe fn req_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    opt_str(p)?.ok_or_else(|| null(what))
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| null(what))
}

/// Message of the last failed call on this thread, or null. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn sp_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn sp_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Builds a ring over GF(p^m) with the default modulus.
///
/// `alpha0` and `beta` are comma-separated GF(p) digits, constant term first.
/// A null `alpha0` selects the first λ with `x^n − λ` irreducible. A null `beta`
/// gives the field quotient; otherwise the chain-ring quotient with that β.
///
/// # Safety
/// String arguments must be null or valid NUL-terminated strings; `out` must
/// be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sp_ring_new(
    p: u32,
    m: usize,
    n: u64,
    s: u32,
    alpha0: *const c_char,
    beta: *const c_char,
    out: *mut *mut SpRing,
) -> SpStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let field = Field::new(p, m, None)?;
        let a0 = match opt_str(alpha0)? {
            Some(text) => field.parse(text)?,
            None => *field.irreducible_binomial_constants(n).first().ok_or_else(|| {
                Fail::from(Error::ConstructionRefused(format!("no λ makes x^{n} - λ irreducible")))
            })?,
        };
        let (base, b) = match opt_str(beta)? {
            Some(text) => (Base::Chain, field.parse(text)?),
            None => (Base::Field, Gf::ZERO),
        };
        let ring = QuotientRing::new(field, base, n, s, a0, b)?;
        *out = Box::into_raw(Box::new(SpRing(ring)));
        Ok(())
    })
}

/// # Safety
/// `ring` must be null or a handle from [`sp_ring_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sp_ring_free(ring: *mut SpRing) {
    if !ring.is_null() {
        drop(Box::from_raw(ring));
    }
}

/// Code length `n·p^s`, or 0 for a null handle.
///
/// # Safety
/// `ring` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sp_ring_length(ring: *const SpRing) -> usize {
    ring.as_ref().map_or(0, |r| r.0.len())
}

/// Builds the code of a textual spec such as `"field-power:i=1"` or
/// `"type2:j=7,k=1,b=1"`.
///
/// # Safety
/// `ring` must be a live handle, `spec` a valid NUL-terminated string and
/// `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sp_code_new(ring: *const SpRing, spec: *const c_char, out: *mut *mut SpCode) -> SpStatus {
    guard(|| {
        let ring = deref(ring, "ring")?;
        let text = req_str(spec, "spec")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let spec = CodeSpec::parse(&ring.0, text)?;
        *out = Box::into_raw(Box::new(SpCode(ConstacyclicCode::build(&spec)?)));
        Ok(())
    })
}

/// # Safety
/// `code` must be null or a handle from [`sp_code_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sp_code_free(code: *mut SpCode) {
    if !code.is_null() {
        drop(Box::from_raw(code));
    }
}

/// Dimension over GF(p); the code has `p^dim` words. 0 for a null handle.
///
/// # Safety
/// `code` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sp_code_dim_p(code: *const SpCode) -> usize {
    code.as_ref().map_or(0, |c| c.0.dim_p())
}

/// Minimum distances by enumeration. Codes above `budget` words are sampled
/// and reported as [`SpMethod::UpperBound`] unless `exact` is set, in which
/// case the call fails with [`SpStatus::BudgetExceeded`].
///
/// # Safety
/// `code` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sp_code_distance(
    code: *const SpCode,
    budget: u64,
    seed: u64,
    exact: bool,
    out: *mut SpDistanceReport,
) -> SpStatus {
    guard(|| {
        let code = deref(code, "code")?;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        let report = min_distance_brute(&code.0, Metric::Pair, OracleOptions { budget, seed });
        if exact && report.method == Method::UpperBound {
            return Err(Fail(
                SpStatus::BudgetExceeded,
                format!("code of GF(p)-dimension {} exceeds the budget of {budget} words", code.0.dim_p()),
            ));
        }
        *out = SpDistanceReport {
            d_sp: report.d_sp,
            d_h: report.d_h,
            blocks: report.blocks.map_or(-1, |b| b as i64),
            method: match report.method {
                Method::ClosedForm => SpMethod::ClosedForm,
                Method::Exhaustive => SpMethod::Exhaustive,
                Method::UpperBound => SpMethod::UpperBound,
            },
            words_examined: report.words_examined,
        };
        Ok(())
    })
}

/// Closed-form distances of a code built from a spec.
///
/// # Safety
/// `code` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sp_code_formula_distance(code: *const SpCode, out: *mut SpDistanceReport) -> SpStatus {
    guard(|| {
        let code = deref(code, "code")?;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        let spec = code
            .0
            .spec()
            .ok_or_else(|| Fail(SpStatus::ConstraintViolation, "code has no spec".into()))?;
        *out = SpDistanceReport {
            d_sp: theory::dsp_formula(spec)?.value,
            d_h: theory::dh_formula_spec(spec)?,
            blocks: -1,
            method: SpMethod::ClosedForm,
            words_examined: 0,
        };
        Ok(())
    })
}

/// Distance report as a JSON string; release it with [`sp_string_free`].
///
/// # Safety
/// `code` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sp_code_distance_json(
    code: *const SpCode,
    budget: u64,
    seed: u64,
    out: *mut *mut c_char,
) -> SpStatus {
    guard(|| {
        let code = deref(code, "code")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let report = min_distance_brute(&code.0, Metric::Pair, OracleOptions { budget, seed });
        let text = CString::new(report.to_json().to_string()).expect("json has no nul bytes");
        *out = text.into_raw();
        Ok(())
    })
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Symbol-pair weight of a word; symbol 0 is the zero symbol.
///
/// # Safety
/// `word` must point to `len` readable values and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn sp_pair_weight(word: *const u32, len: usize, out: *mut usize) -> SpStatus {
    guard(|| {
        if word.is_null() {
            return Err(null("word"));
        }
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        *out = pairmetric::wt_sp(std::slice::from_raw_parts(word, len))?;
        Ok(())
    })
}
