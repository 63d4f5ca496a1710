//! C ABI over the `chebotarev` crate.
//!
//! Conventions:
//! - every fallible function returns a [`ChebStatus`]; results go through out-pointers
//!   that are written only on success;
//! - on failure the message is kept per thread and read with [`cheb_last_error`];
//! - `CycInt` values are opaque [`ChebCycInt`] handles released with [`cheb_cycint_free`];
//! - returned strings are owned by the caller and released with [`cheb_string_free`];
//! - composite inputs and reports (signals, measurements, traces) travel as JSON text
//!   in the same shapes the command-line tool reads and writes.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use chebotarev::fourier_minors::{
    proof_trace, verify_all_minors, FourierMinor, IndexSet, SparseCycPoly, VerifyOptions,
};
use chebotarev::fp_poly::{FpPoly, FpScalar};
use chebotarev::recovery::{recover, MeasurementSet};
use chebotarev::uncertainty::{uncertainty_check, Signal};
use chebotarev::{CycInt, Error, Prime, Valuation};

/// Outcome of an FFI call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChebStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    NotDivisible = 3,
    TheoremViolation = 4,
    Inconsistent = 5,
    TooLarge = 6,
    Parse = 7,
    Panic = 8,
}

/// Opaque element of Z[ω].
pub struct ChebCycInt(CycInt);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let message = CString::new(message.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(message));
}

fn status_of(err: &Error) -> ChebStatus {
    match err {
        Error::NotDivisible(_) => ChebStatus::NotDivisible,
        Error::TheoremViolation(_) => ChebStatus::TheoremViolation,
        Error::Inconsistent(_) => ChebStatus::Inconsistent,
        Error::TooLarge(_) => ChebStatus::TooLarge,
        Error::Parse(_) => ChebStatus::Parse,
        _ => ChebStatus::InvalidArgument,
    }
}

enum Failure {
    Null,
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type FfiResult<T> = Result<T, Failure>;

/// Runs `body`, converting errors and panics into a status and a stored message.
fn guard(body: impl FnOnce() -> FfiResult<()>) -> ChebStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => ChebStatus::Ok,
        Ok(Err(Failure::Null)) => {
            set_error("null pointer argument".into());
            ChebStatus::NullPointer
        }
        Ok(Err(Failure::Lib(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Err(panic) => {
            let msg = panic
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| panic.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "internal panic".into());
            set_error(msg);
            ChebStatus::Panic
        }
    }
}

unsafe fn deref<'a, T>(p: *const T) -> FfiResult<&'a T> {
    p.as_ref().ok_or(Failure::Null)
}

unsafe fn out<'a, T>(p: *mut T) -> FfiResult<&'a mut T> {
    p.as_mut().ok_or(Failure::Null)
}

unsafe fn slice<'a, T>(p: *const T, len: usize) -> FfiResult<&'a [T]> {
    if len == 0 {
        Ok(&[])
    } else if p.is_null() {
        Err(Failure::Null)
    } else {
        Ok(std::slice::from_raw_parts(p, len))
    }
}

unsafe fn text<'a>(p: *const c_char) -> FfiResult<&'a str> {
    if p.is_null() {
        return Err(Failure::Null);
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| Error::Parse(format!("input is not UTF-8: {e}")).into())
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s)
        .expect("JSON has no interior nul")
        .into_raw()
}

fn handle(value: CycInt) -> *mut ChebCycInt {
    Box::into_raw(Box::new(ChebCycInt(value)))
}

fn index_set(prime: Prime, elems: &[u32]) -> FfiResult<IndexSet> {
    let elems: Vec<i64> = elems.iter().map(|&e| i64::from(e)).collect();
    Ok(IndexSet::new(prime, &elems)?)
}

/// Library version as a static nul-terminated string. Do not free.
#[no_mangle]
pub extern "C" fn cheb_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failed call on this thread, or null. Valid until the
/// next failing call on the same thread. Do not free.
#[no_mangle]
pub extern "C" fn cheb_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn cheb_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds an element from `p - 1` coefficients in the basis `1, ω, …, ω^(p-2)`.
///
/// # Safety
/// `coeffs` must point to `len` readable values; `out_handle` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cheb_cycint_from_i64(
    p: u64,
    coeffs: *const i64,
    len: usize,
    out_handle: *mut *mut ChebCycInt,
) -> ChebStatus {
    guard(|| {
        let prime = Prime::new(p)?;
        let value = CycInt::from_i64s(prime, slice(coeffs, len)?)?;
        *out(out_handle)? = handle(value);
        Ok(())
    })
}

/// Parses a JSON array of `p - 1` decimal coefficient strings.
///
/// # Safety
/// `json` must be a nul-terminated string; `out_handle` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cheb_cycint_from_json(
    p: u64,
    json: *const c_char,
    out_handle: *mut *mut ChebCycInt,
) -> ChebStatus {
    guard(|| {
        let prime = Prime::new(p)?;
        let value = CycInt::from_json(prime, text(json)?)?;
        *out(out_handle)? = handle(value);
        Ok(())
    })
}

/// Serializes an element as a JSON array of coefficient strings.
///
/// # Safety
/// `h` must be a live handle; `out_json` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cheb_cycint_to_json(
    h: *const ChebCycInt,
    out_json: *mut *mut c_char,
) -> ChebStatus {
    guard(|| {
        let value = &deref(h)?.0;
        *out(out_json)? = into_c_string(value.to_json());
        Ok(())
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `h` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn cheb_cycint_free(h: *mut ChebCycInt) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// # Safety
/// `a` and `b` must be live handles; `out_handle` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cheb_cycint_add(
    a: *const ChebCycInt,
    b: *const ChebCycInt,
    out_handle: *mut *mut ChebCycInt,
) -> ChebStatus {
    guard(|| {
        let sum = deref(a)?.0.try_add(&deref(b)?.0)?;
        *out(out_handle)? = handle(sum);
        Ok(())
    })
}

/// # Safety
/// `a` and `b` must be live handles; `out_handle` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cheb_cycint_mul(
    a: *const ChebCycInt,
    b: *const ChebCycInt,
    out_handle: *mut *mut ChebCycInt,
) -> ChebStatus {
    guard(|| {
        let product = deref(a)?.0.try_mul(&deref(b)?.0)?;
        *out(out_handle)? = handle(product);
        Ok(())
    })
}

/// Image of the element in `Z[ω]/(1 - ω) = F_p`, in `0..p`.
///
/// # Safety
/// `h` must be a live handle; `out_residue` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cheb_cycint_reduce(
    h: *const ChebCycInt,
    out_residue: *mut u64,
) -> ChebStatus {
    guard(|| {
        *out(out_residue)? = deref(h)?.0.reduce_mod_one_minus_omega();
        Ok(())
    })
}

/// Exact quotient by `1 - ω`; fails with `NotDivisible` outside the kernel.
///
/// # Safety
/// `h` must be a live handle; `out_handle` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cheb_cycint_divide_one_minus_omega(
    h: *const ChebCycInt,
    out_handle: *mut *mut ChebCycInt,
) -> ChebStatus {
    guard(|| {
        let q = deref(h)?.0.divide_by_one_minus_omega()?;
        *out(out_handle)? = handle(q);
        Ok(())
    })
}

/// `(1 - ω)`-adic valuation; `-1` stands for the valuation of zero.
///
/// # Safety
/// `h` must be a live handle; `out_valuation` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cheb_cycint_valuation(
    h: *const ChebCycInt,
    out_valuation: *mut i64,
) -> ChebStatus {
    guard(|| {
        *out(out_valuation)? = match deref(h)?.0.valuation_one_minus_omega() {
            Valuation::Finite(v) => v as i64,
            Valuation::Infinite => -1,
        };
        Ok(())
    })
}

/// Determinant of the minor `(ω^(ij))` on rows `rows` and columns `cols`.
///
/// # Safety
/// `rows` and `cols` must point to `n_rows` and `n_cols` readable values;
/// `out_handle` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cheb_minor_determinant(
    p: u64,
    rows: *const u32,
    n_rows: usize,
    cols: *const u32,
    n_cols: usize,
    out_handle: *mut *mut ChebCycInt,
) -> ChebStatus {
    guard(|| {
        let prime = Prime::new(p)?;
        let rows = index_set(prime, slice(rows, n_rows)?)?;
        let cols = index_set(prime, slice(cols, n_cols)?)?;
        let minor = FourierMinor::build(prime, &rows, &cols)?;
        *out(out_handle)? = handle(minor.determinant_integral());
        Ok(())
    })
}

/// Exhaustive minor check; writes the JSON report. `size == 0` checks all sizes.
///
/// # Safety
/// `out_json` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cheb_verify_minors(
    p: u64,
    size: usize,
    jobs: usize,
    allow_large: bool,
    out_json: *mut *mut c_char,
) -> ChebStatus {
    guard(|| {
        let prime = Prime::new(p)?;
        let options = VerifyOptions {
            size: (size != 0).then_some(size),
            jobs,
            allow_large,
        };
        let report = verify_all_minors(prime, options)?;
        *out(out_json)? = into_c_string(serde_json::to_string(&report).expect("report serializes"));
        Ok(())
    })
}

/// Multiplicity of `root` in a polynomial over F_p and its non-zero
/// coefficient count; fails if the multiplicity is not below the count.
///
/// # Safety
/// `coeffs` must point to `len` readable values; both out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn cheb_root_multiplicity_bound(
    p: u64,
    coeffs: *const i64,
    len: usize,
    root: i64,
    out_multiplicity: *mut usize,
    out_nonzero_coeffs: *mut usize,
) -> ChebStatus {
    guard(|| {
        let prime = Prime::new(p)?;
        let poly = FpPoly::new(prime, slice(coeffs, len)?);
        let w = poly.lemma2_holds(FpScalar::new(prime, root))?;
        *out(out_multiplicity)? = w.multiplicity;
        *out(out_nonzero_coeffs)? = w.nonzero_coeffs;
        Ok(())
    })
}

/// Support sizes of a signal (`{"p":…,"values":[…]}`) and its transform, as JSON.
///
/// # Safety
/// `signal_json` must be a nul-terminated string; `out_json` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cheb_uncertainty(
    signal_json: *const c_char,
    out_json: *mut *mut c_char,
) -> ChebStatus {
    guard(|| {
        let f = Signal::from_json(text(signal_json)?)?;
        let report = uncertainty_check(&f)?;
        *out(out_json)? = into_c_string(serde_json::to_string(&report).expect("report serializes"));
        Ok(())
    })
}

/// Recovers the signal with at most `k` non-zero values matching the
/// measurements (`{"p":…,"samples":[…],"values":[…]}`), as JSON.
///
/// # Safety
/// `measurements_json` must be a nul-terminated string; `out_json` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cheb_recover(
    measurements_json: *const c_char,
    k: usize,
    out_json: *mut *mut c_char,
) -> ChebStatus {
    guard(|| {
        let m = MeasurementSet::from_json(text(measurements_json)?)?;
        let result = recover(&m, k)?;
        *out(out_json)? = into_c_string(serde_json::to_string(&result).expect("result serializes"));
        Ok(())
    })
}

/// Step-by-step kernel argument for coefficients (`{"p":…,"terms":{…}}`) on
/// the given rows, as JSON.
///
/// # Safety
/// `rows` must point to `n_rows` readable values, `coeffs_json` must be a
/// nul-terminated string, and `out_json` must be writable.
#[no_mangle]
pub unsafe extern "C" fn cheb_proof_trace(
    rows: *const u32,
    n_rows: usize,
    coeffs_json: *const c_char,
    out_json: *mut *mut c_char,
) -> ChebStatus {
    guard(|| {
        let coeffs = SparseCycPoly::from_json(text(coeffs_json)?)?;
        let rows = index_set(coeffs.prime(), slice(rows, n_rows)?)?;
        let trace = proof_trace(&rows, &coeffs)?;
        *out(out_json)? = into_c_string(serde_json::to_string(&trace).expect("trace serializes"));
        Ok(())
    })
}
