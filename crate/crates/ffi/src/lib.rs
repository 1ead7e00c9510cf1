//! C ABI for qball.
//!
//! Every fallible function returns a [`QballStatus`]. On failure a message is
//! kept per thread and can be read with [`qball_last_error`]. Strings handed
//! out through `out` parameters are owned by the caller and released with
//! [`qball_string_free`]; series handles are released with [`qball_series_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use qball::cli::{cmd_gram, cmd_verify, CliError, Flags, RunConfig};
use qball::kernels::{evaluate_matrix, series_to_json, KernelSeries, Kernels, LambdaTag};
use qball::scalars::text::parse_rational;
use qball::scalars::{Magnitude, QFun};

/// Result codes shared by all functions.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QballStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    ComputationFailed = 3,
    VerificationFailed = 4,
    BufferTooSmall = 5,
    Panic = 6,
}

/// Opaque handle to an expanded kernel series.
pub struct QballSeries {
    ks: Kernels,
    series: KernelSeries,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

struct Failure(QballStatus, String);

impl From<CliError> for Failure {
    fn from(e: CliError) -> Self {
        match e {
            CliError::Validation(m) => Failure(QballStatus::InvalidArgument, m),
            CliError::Computation(m) => Failure(QballStatus::ComputationFailed, m),
        }
    }
}

impl From<qball::Error> for Failure {
    fn from(e: qball::Error) -> Self {
        Failure::from(CliError::from(e))
    }
}

fn invalid(msg: impl Into<String>) -> Failure {
    Failure(QballStatus::InvalidArgument, msg.into())
}

/// Runs `f`, recording any error or panic.
fn guard(f: impl FnOnce() -> Result<QballStatus, Failure>) -> QballStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(status)) => status,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            QballStatus::Panic
        }
    }
}

/// Optional C string; NULL means "not given".
unsafe fn opt_str(p: *const c_char) -> Result<Option<String>, Failure> {
    if p.is_null() {
        return Ok(None);
    }
    CStr::from_ptr(p).to_str().map(|s| Some(s.to_string())).map_err(|_| invalid("string argument is not UTF-8"))
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<QballStatus, Failure> {
    let c = CString::new(s).map_err(|_| invalid("output contains a NUL byte"))?;
    *out = c.into_raw();
    Ok(QballStatus::Ok)
}

/// Version of the library as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn qball_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message for the last failed call on this thread, or NULL. The pointer is
/// valid until the next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn qball_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be NULL or a string returned by this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn qball_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Expands the Bergman kernel of the `m × n` ball up to `degree`.
///
/// `lambda` is NULL or "formal" for formal λ, or a rational with integer
/// `2λ`. With `ordinary` set the finite product at λ = m+n is used and
/// `lambda` must be NULL.
///
/// # Safety
/// `lambda` must be NULL or a valid C string; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qball_series_expand(
    m: usize,
    n: usize,
    degree: usize,
    lambda: *const c_char,
    ordinary: bool,
    out: *mut *mut QballSeries,
) -> QballStatus {
    guard(|| {
        if out.is_null() {
            return Err(Failure(QballStatus::NullPointer, "out is NULL".into()));
        }
        let shape = qball::algebra::Shape::new(m, n)?;
        let lambda = opt_str(lambda)?;
        let ks = Kernels::new(shape);
        let series = match (ordinary, lambda.as_deref()) {
            (true, None) => ks.ordinary_bergman_kernel(degree),
            (true, Some(_)) => return Err(invalid("ordinary expansion fixes lambda; pass NULL")),
            (false, None) | (false, Some("formal")) => ks.bergman_kernel(degree),
            (false, Some(text)) => {
                let v = parse_rational(text)?;
                let two = &v * qball::scalars::rational(2, 1);
                let k = two
                    .is_integer()
                    .then(|| two.to_integer().try_into().ok())
                    .flatten()
                    .ok_or_else(|| invalid(format!("2*lambda must be a small integer, got {text}")))?;
                ks.bergman_kernel(degree).substitute_u(&QFun::q_pow(k), LambdaTag::Value(text.to_string()))
            }
        };
        *out = Box::into_raw(Box::new(QballSeries { ks, series }));
        Ok(QballStatus::Ok)
    })
}

/// # Safety
/// `series` must be NULL or a handle from [`qball_series_expand`] that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn qball_series_free(series: *mut QballSeries) {
    if !series.is_null() {
        drop(Box::from_raw(series));
    }
}

/// Highest degree held by the series, or 0 for NULL.
///
/// # Safety
/// `series` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qball_series_degree(series: *const QballSeries) -> usize {
    series.as_ref().map_or(0, |s| s.series.degree())
}

/// Number of nonzero `z ⊗ z̄` terms in the degree-`d` component, or 0 when out of range.
///
/// # Safety
/// `series` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qball_series_term_count(series: *const QballSeries, d: usize) -> usize {
    series.as_ref().and_then(|s| s.series.terms.get(d)).map_or(0, |k| k.len())
}

/// Writes the JSON form of the series to `*out`.
///
/// # Safety
/// `series` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qball_series_to_json(series: *const QballSeries, out: *mut *mut c_char) -> QballStatus {
    guard(|| {
        let s = series.as_ref().ok_or_else(|| Failure(QballStatus::NullPointer, "series is NULL".into()))?;
        if out.is_null() {
            return Err(Failure(QballStatus::NullPointer, "out is NULL".into()));
        }
        write_string(out, series_to_json(&s.series))
    })
}

/// Evaluates the degree-`d` coefficient matrix at `q` and `u = q^{2λ}` into a
/// row-major `double` buffer. `*dim` receives the matrix size; when
/// `capacity < dim²` nothing is written and `BUFFER_TOO_SMALL` is returned.
///
/// # Safety
/// `series` must be a live handle, `q` and `lambda` valid C strings, `dim` a
/// valid pointer and `buf` valid for `capacity` writes (or NULL with capacity 0).
#[no_mangle]
pub unsafe extern "C" fn qball_series_coefficient_matrix(
    series: *const QballSeries,
    d: usize,
    q: *const c_char,
    lambda: *const c_char,
    buf: *mut f64,
    capacity: usize,
    dim: *mut usize,
) -> QballStatus {
    guard(|| {
        let s = series.as_ref().ok_or_else(|| Failure(QballStatus::NullPointer, "series is NULL".into()))?;
        if dim.is_null() {
            return Err(Failure(QballStatus::NullPointer, "dim is NULL".into()));
        }
        let q = parse_rational(&opt_str(q)?.ok_or_else(|| Failure(QballStatus::NullPointer, "q is NULL".into()))?)?;
        qball::scalars::check_q(&q)?;
        let lambda = opt_str(lambda)?.ok_or_else(|| Failure(QballStatus::NullPointer, "lambda is NULL".into()))?;
        let lambda = parse_rational(&lambda)?;
        let two = &lambda * qball::scalars::rational(2, 1);
        let k: usize = two
            .is_integer()
            .then(|| two.to_integer().try_into().ok())
            .flatten()
            .ok_or_else(|| invalid("2*lambda must be a nonnegative integer"))?;
        let u = num_traits::pow(q.clone(), k);
        let c = evaluate_matrix(&s.ks.coefficient_matrix(&s.series, d)?, &q, &u)?;
        *dim = c.rows();
        let len = c.rows() * c.cols();
        if capacity < len || (len > 0 && buf.is_null()) {
            return Ok(QballStatus::BufferTooSmall);
        }
        for (i, x) in c.to_rows().iter().flatten().enumerate() {
            *buf.add(i) = Magnitude::to_f64(x);
        }
        Ok(QballStatus::Ok)
    })
}

unsafe fn flags(m: usize, n: usize, degree: usize, lambda: *const c_char, q: *const c_char) -> Result<Flags, Failure> {
    Ok(Flags {
        m: Some(m),
        n: Some(n),
        degree: Some(degree),
        lambda: opt_str(lambda)?,
        q: opt_str(q)?,
        ..Flags::default()
    })
}

/// Gram matrices of degrees `0..=degree` as JSON (same document as `qball gram`).
/// `tolerance` may be NULL for the default.
///
/// # Safety
/// String arguments must be NULL or valid C strings; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qball_gram_json(
    m: usize,
    n: usize,
    degree: usize,
    lambda: *const c_char,
    q: *const c_char,
    tolerance: *const c_char,
    out: *mut *mut c_char,
) -> QballStatus {
    guard(|| {
        if out.is_null() {
            return Err(Failure(QballStatus::NullPointer, "out is NULL".into()));
        }
        let mut f = flags(m, n, degree, lambda, q)?;
        f.tolerance = opt_str(tolerance)?;
        let cfg = RunConfig::resolve(&f)?;
        write_string(out, cmd_gram(&cfg)?)
    })
}

/// Runs a verification suite ("algebra", "fock", "kernels", "crosscheck" or
/// "all") and writes the JSON report. Returns `VERIFICATION_FAILED` when a
/// check fails; the report is written either way.
///
/// # Safety
/// String arguments must be NULL or valid C strings; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qball_verify(
    suite: *const c_char,
    m: usize,
    n: usize,
    degree: usize,
    lambda: *const c_char,
    q: *const c_char,
    out: *mut *mut c_char,
) -> QballStatus {
    guard(|| {
        if out.is_null() {
            return Err(Failure(QballStatus::NullPointer, "out is NULL".into()));
        }
        let mut f = flags(m, n, degree, lambda, q)?;
        f.suite = opt_str(suite)?;
        let cfg = RunConfig::resolve(&f)?;
        let (report, passed) = cmd_verify(&cfg)?;
        write_string(out, report)?;
        Ok(if passed { QballStatus::Ok } else { QballStatus::VerificationFailed })
    })
}
