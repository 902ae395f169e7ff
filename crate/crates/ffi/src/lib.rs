//! C ABI over the `wflag` library.
//!
//! Varieties are opaque heap handles created by `wflag_variety_new` and
//! released with `wflag_variety_free`. Every fallible call returns a
//! `WflagStatus`; on failure the message is kept per thread and can be read
//! with `wflag_last_error`. Strings returned to the caller are owned by the
//! caller and must be released with `wflag_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use num_traits::ToPrimitive;
use serde_json::json;
use wflag::catalog::{entry, make_weighted};
use wflag::construct::{parse_ops, ConstructedVariety};
use wflag::invariants::{degree, summarize};
use wflag::lattice::Coweight;
use wflag::verify::{run_suite, Suite};
use wflag::Error;

/// Result codes. Zero is success; the library error kinds follow.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WflagStatus {
    Ok = 0,
    Validation = 1,
    Integrality = 2,
    Resource = 3,
    Internal = 4,
    DimensionMismatch = 5,
    Convention = 6,
    PeriodTooSmall = 7,
    IllPosed = 8,
    Parse = 9,
    NullPointer = 10,
    InvalidUtf8 = 11,
    BufferTooSmall = 12,
    Panic = 13,
}

impl From<&Error> for WflagStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::Validation(_) => WflagStatus::Validation,
            Error::Integrality(_) => WflagStatus::Integrality,
            Error::Resource(_) => WflagStatus::Resource,
            Error::Internal(_) => WflagStatus::Internal,
            Error::DimensionMismatch(_) => WflagStatus::DimensionMismatch,
            Error::Convention(_) => WflagStatus::Convention,
            Error::PeriodTooSmall(_) => WflagStatus::PeriodTooSmall,
            Error::IllPosed(_) => WflagStatus::IllPosed,
            Error::Parse(_) => WflagStatus::Parse,
        }
    }
}

/// A weighted flag variety with the cones and sections applied so far.
pub struct WflagVariety {
    inner: ConstructedVariety,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

struct Fail(WflagStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail((&e).into(), e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(WflagStatus::NullPointer, format!("{what} is null"))
}

/// Runs `f`, converting errors and panics into a status and a stored message.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> WflagStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => WflagStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("panic inside wflag".into());
            WflagStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail(WflagStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn variety_ref<'a>(v: *const WflagVariety) -> Result<&'a WflagVariety, Fail> {
    v.as_ref().ok_or_else(|| null("variety"))
}

unsafe fn write_out<T>(out: *mut T, value: T, what: &str) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

fn into_c_string(s: String) -> Result<*mut c_char, Fail> {
    CString::new(s)
        .map(CString::into_raw)
        .map_err(|_| Fail(WflagStatus::Internal, "string contains NUL".into()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn wflag_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failed call on this thread, or NULL. Valid until the
/// next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn wflag_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Builds `wSigma(mu, u)` for catalog entry `id`.
///
/// # Safety
/// `id` must be a NUL-terminated string, `mu` must point to `mu_len` values
/// (it may be NULL when `mu_len` is 0, meaning the zero coweight) and `out`
/// must be writable.
#[no_mangle]
pub unsafe extern "C" fn wflag_variety_new(
    id: *const c_char,
    mu: *const i64,
    mu_len: usize,
    u: i64,
    out: *mut *mut WflagVariety,
) -> WflagStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let e = entry(str_arg(id, "id")?)?;
        let mu = if mu_len == 0 {
            Coweight::zero(e.coweight_len())
        } else if mu.is_null() {
            return Err(null("mu"));
        } else {
            Coweight::new(std::slice::from_raw_parts(mu, mu_len).to_vec())
        };
        let inner: ConstructedVariety = make_weighted(&e, &mu, u)?.into();
        out.write(Box::into_raw(Box::new(WflagVariety { inner })));
        Ok(())
    })
}

/// Releases a handle. NULL is ignored.
///
/// # Safety
/// `v` must come from `wflag_variety_new` and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn wflag_variety_free(v: *mut WflagVariety) {
    if !v.is_null() {
        drop(Box::from_raw(v));
    }
}

/// Applies comma-separated operations such as `"cone:1,section:2"` in place.
/// The handle is unchanged when any operation fails.
///
/// # Safety
/// `v` must be a live handle and `ops` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn wflag_variety_apply(
    v: *mut WflagVariety,
    ops: *const c_char,
) -> WflagStatus {
    guard(|| {
        let v = v.as_mut().ok_or_else(|| null("variety"))?;
        let ops = parse_ops(str_arg(ops, "ops")?)?;
        v.inner = v.inner.apply_all(&ops)?;
        Ok(())
    })
}

/// # Safety
/// `v` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn wflag_variety_dim(v: *const WflagVariety, out: *mut usize) -> WflagStatus {
    guard(|| write_out(out, variety_ref(v)?.inner.dim, "out"))
}

/// Degree `k` of the canonical class `O(k)`.
///
/// # Safety
/// `v` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn wflag_variety_canonical_degree(
    v: *const WflagVariety,
    out: *mut i64,
) -> WflagStatus {
    guard(|| write_out(out, variety_ref(v)?.inner.canonical_degree, "out"))
}

/// Copies the ambient weights into `buf`. `len` receives the number of
/// weights; pass `buf = NULL` to query it. Returns `BufferTooSmall` when
/// `capacity` is short.
///
/// # Safety
/// `v` must be a live handle, `len` writable and `buf`, when non-NULL, must
/// have room for `capacity` values.
#[no_mangle]
pub unsafe extern "C" fn wflag_variety_weights(
    v: *const WflagVariety,
    buf: *mut i64,
    capacity: usize,
    len: *mut usize,
) -> WflagStatus {
    guard(|| {
        let w = &variety_ref(v)?.inner.ambient_weights;
        write_out(len, w.len(), "len")?;
        if buf.is_null() {
            return Ok(());
        }
        if capacity < w.len() {
            return Err(Fail(
                WflagStatus::BufferTooSmall,
                format!("{} weights do not fit in {capacity}", w.len()),
            ));
        }
        ptr::copy_nonoverlapping(w.as_ptr(), buf, w.len());
        Ok(())
    })
}

/// `D^dim` as a reduced fraction `num / den`.
///
/// # Safety
/// `v` must be a live handle; `num` and `den` writable.
#[no_mangle]
pub unsafe extern "C" fn wflag_variety_degree(
    v: *const WflagVariety,
    num: *mut i64,
    den: *mut i64,
) -> WflagStatus {
    guard(|| {
        let d = degree(&variety_ref(v)?.inner)?;
        let (n, m) = match (d.numer().to_i64(), d.denom().to_i64()) {
            (Some(n), Some(m)) => (n, m),
            _ => {
                return Err(Fail(
                    WflagStatus::Resource,
                    format!("degree {d} overflows i64"),
                ))
            }
        };
        write_out(num, n, "num")?;
        write_out(den, m, "den")
    })
}

/// Weights, numerator, canonical degree and invariants as JSON, with
/// rationals written as "p/q" strings. Free the result with
/// `wflag_string_free`.
///
/// # Safety
/// `v` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn wflag_variety_json(
    v: *const WflagVariety,
    out: *mut *mut c_char,
) -> WflagStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let x = &variety_ref(v)?.inner;
        let doc = json!({
            "variety": x.base.entry.id,
            "mu": x.base.mu,
            "u": x.base.u,
            "ops": x.ops,
            "ambient_weights": x.ambient_weights,
            "dim": x.dim,
            "canonical_degree": x.canonical_degree,
            "numerator": x.series.numerator,
            "denominator_exponents": x.series.denom_exponents(),
            "invariants": summarize(x),
        });
        out.write(into_c_string(doc.to_string())?);
        Ok(())
    })
}

/// Runs a verification suite ("examples", "appendix", "compact" or "all") and
/// reports the number of failed hard checks.
///
/// # Safety
/// `suite` must be a NUL-terminated string and `failures` writable.
#[no_mangle]
pub unsafe extern "C" fn wflag_verify(suite: *const c_char, failures: *mut usize) -> WflagStatus {
    guard(|| {
        let suite: Suite = str_arg(suite, "suite")?.parse()?;
        let n = run_suite(suite).iter().filter(|c| c.failed_hard()).count();
        write_out(failures, n, "failures")
    })
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn wflag_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
