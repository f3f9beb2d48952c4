//! C bindings for `qfib-core`.
//!
//! Every fallible function returns a `QfibStatus` and writes its result
//! through an out-pointer. On failure the out-pointer is left untouched and
//! `qfib_last_error_message` describes what went wrong on the calling
//! thread. Polynomials are opaque `QfibPoly` handles released with
//! `qfib_poly_free`; strings handed out by the library are released with
//! `qfib_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use qfib_core::combinat::{enumerate_avoiders, SetPartition};
use qfib_core::families::{self, Family, FamilyTag, Via};
use qfib_core::lgv::{self, IndexSequences, MinorMethod};
use qfib_core::verify::{self, Profile, Status};
use qfib_core::{Ceilings, Error, LaurentPoly};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QfibStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidArgument = 4,
    CeilingExceeded = 5,
    InexactDivision = 6,
    UnknownIdentity = 7,
    IdentityFailed = 8,
    Arithmetic = 9,
    Panic = 10,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QfibVia {
    Recursion = 0,
    Enumeration = 1,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QfibMinorMethod {
    Cofactor = 0,
    AllTuples = 1,
    NoncrossingTuples = 2,
    Reduction = 3,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QfibProfile {
    Quick = 0,
    Full = 1,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct QfibStats {
    pub ls: u64,
    pub rb: u64,
    pub singletons: u64,
    pub doubletons: u64,
    pub blocks: u64,
}

/// Opaque polynomial handle.
pub struct QfibPoly(LaurentPoly);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

struct Fail(QfibStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::Parse { .. } => QfibStatus::Parse,
            Error::CeilingExceeded { .. } => QfibStatus::CeilingExceeded,
            Error::InexactDivision | Error::DivisionByZero => QfibStatus::InexactDivision,
            Error::UnknownIdentity(_) => QfibStatus::UnknownIdentity,
            Error::NegativeExponent { .. }
            | Error::ExponentOverflow
            | Error::ZeroToNegativePower { .. }
            | Error::NonIntegralSpecialization { .. } => QfibStatus::Arithmetic,
            _ => QfibStatus::InvalidArgument,
        };
        Fail(status, e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(QfibStatus::NullPointer, format!("`{what}` is null"))
}

/// Runs `f`, converting errors and panics into a status and the
/// thread's last error.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> QfibStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => QfibStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("panic: {msg}"));
            QfibStatus::Panic
        }
    }
}

unsafe fn text<'a>(s: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|e| Fail(QfibStatus::InvalidUtf8, format!("`{what}`: {e}")))
}

unsafe fn poly<'a>(p: *const QfibPoly, what: &str) -> Result<&'a LaurentPoly, Fail> {
    p.as_ref().map(|p| &p.0).ok_or_else(|| null(what))
}

unsafe fn put<T>(out: *mut T, v: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null("out"));
    }
    out.write(v);
    Ok(())
}

unsafe fn put_poly(out: *mut *mut QfibPoly, p: LaurentPoly) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null("out"));
    }
    out.write(Box::into_raw(Box::new(QfibPoly(p))));
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null("out"));
    }
    let c = CString::new(s).map_err(|e| Fail(QfibStatus::InvalidArgument, e.to_string()))?;
    out.write(c.into_raw());
    Ok(())
}

fn ceilings() -> Result<Ceilings, Fail> {
    Ok(Ceilings::from_env()?)
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn qfib_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message for the last failed call on this thread, or NULL. Valid until
/// the next library call on the same thread.
#[no_mangle]
pub extern "C" fn qfib_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be NULL or a string returned by this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn qfib_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `p` must be NULL or a handle returned by this library, freed once.
#[no_mangle]
pub unsafe extern "C" fn qfib_poly_free(p: *mut QfibPoly) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Parses the canonical text form, e.g. `"x^2*q^-1 - 3*y"`.
///
/// # Safety
/// `src` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qfib_poly_parse(src: *const c_char, out: *mut *mut QfibPoly) -> QfibStatus {
    guard(|| {
        let p: LaurentPoly = text(src, "text")?.parse()?;
        put_poly(out, p)
    })
}

/// # Safety
/// `p` must be a live handle; `out` must be writable. Free the result with
/// `qfib_string_free`.
#[no_mangle]
pub unsafe extern "C" fn qfib_poly_to_string(p: *const QfibPoly, out: *mut *mut c_char) -> QfibStatus {
    guard(|| put_string(out, poly(p, "p")?.to_string()))
}

/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qfib_poly_clone(p: *const QfibPoly, out: *mut *mut QfibPoly) -> QfibStatus {
    guard(|| put_poly(out, poly(p, "p")?.clone()))
}

/// # Safety
/// `a` and `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qfib_poly_add(a: *const QfibPoly, b: *const QfibPoly, out: *mut *mut QfibPoly) -> QfibStatus {
    guard(|| put_poly(out, poly(a, "a")?.clone() + poly(b, "b")?.clone()))
}

/// # Safety
/// `a` and `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qfib_poly_sub(a: *const QfibPoly, b: *const QfibPoly, out: *mut *mut QfibPoly) -> QfibStatus {
    guard(|| put_poly(out, poly(a, "a")?.clone() - poly(b, "b")?.clone()))
}

/// # Safety
/// `a` and `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qfib_poly_mul(a: *const QfibPoly, b: *const QfibPoly, out: *mut *mut QfibPoly) -> QfibStatus {
    guard(|| put_poly(out, poly(a, "a")?.checked_mul(poly(b, "b")?)?))
}

/// `a / b` when `b` divides `a` exactly; `QFIB_STATUS_INEXACT_DIVISION`
/// otherwise.
///
/// # Safety
/// `a` and `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qfib_poly_exact_div(
    a: *const QfibPoly,
    b: *const QfibPoly,
    out: *mut *mut QfibPoly,
) -> QfibStatus {
    guard(|| put_poly(out, poly(a, "a")?.exact_div(poly(b, "b")?)?))
}

/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qfib_poly_invert_q(p: *const QfibPoly, out: *mut *mut QfibPoly) -> QfibStatus {
    guard(|| put_poly(out, poly(p, "p")?.invert_q()))
}

/// # Safety
/// `a` and `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qfib_poly_equal(a: *const QfibPoly, b: *const QfibPoly, out: *mut bool) -> QfibStatus {
    guard(|| put(out, poly(a, "a")? == poly(b, "b")?))
}

/// Member `n` of a family (`"A"`, `"F"`, `"Fxyq"`, `"FK"`, `"FC"`,
/// `"Fxypq"`) with `x, y` scaled by `q^q_shift p^p_shift`.
///
/// # Safety
/// `family` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qfib_family_poly(
    family: *const c_char,
    n: u32,
    q_shift: u32,
    p_shift: u32,
    via: QfibVia,
    out: *mut *mut QfibPoly,
) -> QfibStatus {
    guard(|| {
        let tag: FamilyTag = text(family, "family")?.parse()?;
        let fam = Family::new(tag).with_q_shift(q_shift).with_p_shift(p_shift);
        let via = match via {
            QfibVia::Recursion => Via::Recursion,
            QfibVia::Enumeration => Via::Enumeration,
        };
        put_poly(out, families::family_poly(&fam, n as usize, via, &ceilings()?)?)
    })
}

/// Gaussian binomial `[n, k]_q`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qfib_qbinom(n: i64, k: i64, out: *mut *mut QfibPoly) -> QfibStatus {
    guard(|| put_poly(out, families::qbinom(n, k)))
}

/// p,q-binomial `[n, k]_{p,q}`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qfib_pqbinom(n: i64, k: i64, out: *mut *mut QfibPoly) -> QfibStatus {
    guard(|| put_poly(out, families::pqbinom(n, k)?))
}

/// Statistics of a set partition given in slash form, e.g. `"12/3/45"`.
///
/// # Safety
/// `partition` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qfib_partition_stats(partition: *const c_char, out: *mut QfibStats) -> QfibStatus {
    guard(|| {
        let p: SetPartition = text(partition, "partition")?.parse()?;
        let s = p.stats();
        put(
            out,
            QfibStats {
                ls: s.ls as u64,
                rb: s.rb as u64,
                singletons: s.singletons as u64,
                doubletons: s.doubletons as u64,
                blocks: s.length as u64,
            },
        )
    })
}

/// Number of partitions of `[n]` avoiding every pattern in `patterns`
/// (separated by `,` or `;`, e.g. `"13/2,123"`).
///
/// # Safety
/// `patterns` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qfib_count_avoiders(n: u32, patterns: *const c_char, out: *mut u64) -> QfibStatus {
    guard(|| {
        let ps = qfib_core::cli::parse_patterns(text(patterns, "patterns")?)?;
        let count = enumerate_avoiders(n as usize, &ps, &ceilings()?)?.count();
        put(out, count as u64)
    })
}

/// The minor with rows `rows[0..k]` and columns `cols[0..k]` of the matrix
/// whose `(r, c)` entry is `F_{c-r}(xq^r, yq^r, q)`.
///
/// # Safety
/// `rows` and `cols` must point to `k` readable values; `out` must be
/// writable.
#[no_mangle]
pub unsafe extern "C" fn qfib_minor(
    rows: *const usize,
    cols: *const usize,
    k: usize,
    method: QfibMinorMethod,
    out: *mut *mut QfibPoly,
) -> QfibStatus {
    guard(|| {
        let slice = |p: *const usize, what| {
            if k == 0 {
                Ok(Vec::new())
            } else if p.is_null() {
                Err(null(what))
            } else {
                Ok(std::slice::from_raw_parts(p, k).to_vec())
            }
        };
        let s = IndexSequences::new(slice(rows, "rows")?, slice(cols, "cols")?)?;
        let method = match method {
            QfibMinorMethod::Cofactor => MinorMethod::Cofactor,
            QfibMinorMethod::AllTuples => MinorMethod::AllTuples,
            QfibMinorMethod::NoncrossingTuples => MinorMethod::NoncrossingTuples,
            QfibMinorMethod::Reduction => MinorMethod::Reduction,
        };
        put_poly(out, lgv::minor(&s, method, &ceilings()?)?)
    })
}

/// Checks one registered identity over its domain for `profile`.
///
/// Writes the report as JSON to `report_json` (free with
/// `qfib_string_free`) whenever the identity could be run. Returns
/// `QFIB_STATUS_OK` for a pass or an empty domain and
/// `QFIB_STATUS_IDENTITY_FAILED` for a counterexample.
///
/// # Safety
/// `key` must be a NUL-terminated string; `report_json` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qfib_verify_identity(
    key: *const c_char,
    profile: QfibProfile,
    report_json: *mut *mut c_char,
) -> QfibStatus {
    let mut failed = None;
    let status = guard(|| {
        let profile = match profile {
            QfibProfile::Quick => Profile::Quick,
            QfibProfile::Full => Profile::Full,
        };
        let mut r = verify::run_identity(text(key, "key")?, profile, &[], &ceilings()?)?;
        if let Some(e) = r.error_kind.take() {
            return Err(e.into());
        }
        let json = serde_json::to_string(&r).map_err(|e| Fail(QfibStatus::Panic, e.to_string()))?;
        put_string(report_json, json)?;
        if r.status == Status::Fail {
            failed = r.counterexample.map(|c| format!("{}: {}", r.name, c.what));
        }
        Ok(())
    });
    match failed {
        Some(msg) if status == QfibStatus::Ok => {
            set_error(msg);
            QfibStatus::IdentityFailed
        }
        _ => status,
    }
}
