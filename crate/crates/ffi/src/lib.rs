//! C ABI for `ikeda-core`.
//!
//! Objects cross the boundary as opaque handles created by `*_new` or
//! `*_load` functions and released by the matching `*_free`. Arbitrary
//! precision integers cross as NUL-terminated decimal strings; strings
//! returned by this library must be released with [`ikeda_string_free`].
//!
//! Every fallible function returns an [`IkedaStatus`]. On failure the output
//! pointer is left untouched and [`ikeda_last_error`] describes the problem
//! until the next call on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use ikeda_core::ikeda::{self, IkedaError};
use ikeda_core::modforms::{self, FormsError, FourierSeries};
use ikeda_core::qseries::{self, QSeriesError};
use ikeda_core::Integer;

/// Result codes shared by every fallible function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IkedaStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// Parameters outside the supported domain, or a malformed string.
    InvalidArgument = 2,
    /// An exact check failed: route disagreement, non-integral coefficient,
    /// Deligne violation or an inconsistent eigenform table.
    CheckFailed = 3,
    /// An eigenform table could not be read.
    Io = 4,
    /// A panic was caught at the boundary.
    Internal = 5,
}

/// Which construction computes `λ_F(p)`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IkedaRoute {
    Sum = 0,
    Factored = 1,
    Reciprocal = 2,
}

/// Validated `(n, k)` lift parameters.
pub struct IkedaParams(ikeda::IkedaParams);

/// Fourier coefficients of a normalized Hecke eigenform.
pub struct IkedaEigenform(FourierSeries);

/// Verification outcome at a single prime.
pub struct IkedaReport(ikeda::EigenvalueReport);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: impl ToString) {
    let text = message.to_string().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).expect("interior NULs removed"));
}

struct Fail(IkedaStatus, String);

impl Fail {
    fn null(what: &str) -> Self {
        Fail(IkedaStatus::NullPointer, format!("{what} is null"))
    }

    fn invalid(message: impl ToString) -> Self {
        Fail(IkedaStatus::InvalidArgument, message.to_string())
    }
}

impl From<FormsError> for Fail {
    fn from(e: FormsError) -> Self {
        let status = match e {
            FormsError::Io { .. } => IkedaStatus::Io,
            FormsError::UnsupportedWeight(_)
            | FormsError::InvalidEisensteinWeight(_)
            | FormsError::BeyondTruncation { .. }
            | FormsError::NotPrime(_) => IkedaStatus::InvalidArgument,
            _ => IkedaStatus::CheckFailed,
        };
        Fail(status, e.to_string())
    }
}

impl From<IkedaError> for Fail {
    fn from(e: IkedaError) -> Self {
        match e {
            IkedaError::Forms(f) => f.into(),
            IkedaError::InvalidParams { .. } | IkedaError::NotPrime(_) => Fail::invalid(e),
            _ => Fail(IkedaStatus::CheckFailed, e.to_string()),
        }
    }
}

impl From<QSeriesError> for Fail {
    fn from(e: QSeriesError) -> Self {
        match e {
            QSeriesError::NegativeArgument(_) | QSeriesError::OutOfRange { .. } => Fail::invalid(e),
            _ => Fail(IkedaStatus::CheckFailed, e.to_string()),
        }
    }
}

/// Runs `body`, records any failure, and converts panics to `Internal`.
fn guard(body: impl FnOnce() -> Result<(), Fail>) -> IkedaStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            set_error("");
            IkedaStatus::Ok
        }
        Ok(Err(Fail(status, message))) => {
            set_error(message);
            status
        }
        Err(payload) => {
            let message = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal error: {message}"));
            IkedaStatus::Internal
        }
    }
}

unsafe fn borrow<'a, T>(ptr: *const T, what: &str) -> Result<&'a T, Fail> {
    ptr.as_ref().ok_or_else(|| Fail::null(what))
}

unsafe fn read_str<'a>(ptr: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if ptr.is_null() {
        return Err(Fail::null(what));
    }
    CStr::from_ptr(ptr)
        .to_str()
        .map_err(|_| Fail::invalid(format!("{what} is not UTF-8")))
}

unsafe fn read_integer(ptr: *const c_char, what: &str) -> Result<Integer, Fail> {
    let text = read_str(ptr, what)?;
    text.trim()
        .parse()
        .map_err(|_| Fail::invalid(format!("{what} is not a decimal integer: {text:?}")))
}

unsafe fn write_out<T>(out: *mut T, value: T, what: &str) -> Result<(), Fail> {
    if out.is_null() {
        return Err(Fail::null(what));
    }
    out.write(value);
    Ok(())
}

fn into_c_string(text: String) -> *mut c_char {
    CString::new(text)
        .expect("decimal text has no NUL")
        .into_raw()
}

/// Message for the most recent failure on this thread, or an empty string.
/// The pointer stays valid until the next call into this library.
#[no_mangle]
pub extern "C" fn ikeda_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ikeda_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Validates `(n, k)` and stores a new handle in `*out`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ikeda_params_new(
    n: i64,
    k: i64,
    out: *mut *mut IkedaParams,
) -> IkedaStatus {
    guard(|| {
        let params = ikeda::IkedaParams::new(n, k)?;
        write_out(out, Box::into_raw(Box::new(IkedaParams(params))), "out")
    })
}

/// # Safety
/// `params` must be null or a handle from [`ikeda_params_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ikeda_params_free(params: *mut IkedaParams) {
    if !params.is_null() {
        drop(Box::from_raw(params));
    }
}

/// Weight `2k - n` of the eigenform the lift is built from, or 0 for null.
///
/// # Safety
/// `params` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ikeda_params_eigenform_weight(params: *const IkedaParams) -> u32 {
    params.as_ref().map_or(0, |p| p.0.eigenform_weight())
}

/// Built-in eigenform of `weight` with coefficients `a(0..=truncation)`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ikeda_eigenform_builtin(
    weight: u32,
    truncation: usize,
    out: *mut *mut IkedaEigenform,
) -> IkedaStatus {
    guard(|| {
        let form = modforms::eigenform(weight, truncation)?;
        write_out(out, Box::into_raw(Box::new(IkedaEigenform(form))), "out")
    })
}

/// Reads and validates a coefficient table (`m a(m)` per line).
///
/// # Safety
/// `path` must be a NUL-terminated string and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ikeda_eigenform_load(
    path: *const c_char,
    weight: u32,
    out: *mut *mut IkedaEigenform,
) -> IkedaStatus {
    guard(|| {
        let path = read_str(path, "path")?;
        let form = modforms::load_eigenform(path, weight)?;
        write_out(out, Box::into_raw(Box::new(IkedaEigenform(form))), "out")
    })
}

/// # Safety
/// `form` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ikeda_eigenform_free(form: *mut IkedaEigenform) {
    if !form.is_null() {
        drop(Box::from_raw(form));
    }
}

/// Largest index `m` with a known coefficient, or 0 for null.
///
/// # Safety
/// `form` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ikeda_eigenform_truncation(form: *const IkedaEigenform) -> usize {
    form.as_ref().map_or(0, |f| f.0.truncation())
}

/// Coefficient `a(m)` as a decimal string.
///
/// # Safety
/// `form` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ikeda_eigenform_coeff(
    form: *const IkedaEigenform,
    m: usize,
    out: *mut *mut c_char,
) -> IkedaStatus {
    guard(|| {
        let form = borrow(form, "form")?;
        let c = form.0.coeff(m).ok_or_else(|| {
            Fail::invalid(format!(
                "a({m}) is beyond truncation {}",
                form.0.truncation()
            ))
        })?;
        write_out(out, into_c_string(c.to_string()), "out")
    })
}

/// `λ_F(p)` at `a_f(p) = ap` by the chosen route, as a decimal string.
///
/// # Safety
/// `params` must be a live handle, `ap` a NUL-terminated decimal string and
/// `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ikeda_lambda(
    params: *const IkedaParams,
    p: u64,
    ap: *const c_char,
    route: IkedaRoute,
    out: *mut *mut c_char,
) -> IkedaStatus {
    guard(|| {
        let params = &borrow(params, "params")?.0;
        let ap = read_integer(ap, "ap")?;
        let value = match route {
            IkedaRoute::Sum => ikeda::route_sum(params, p, &ap)?,
            IkedaRoute::Factored => ikeda::route_factored(params, p, &ap)?,
            IkedaRoute::Reciprocal => ikeda::route_reciprocal(params, p, &ap)?,
        };
        write_out(out, into_c_string(value.to_string()), "out")
    })
}

/// Verifies `λ_F(p)` with `a_f(p)` read from `form`.
///
/// # Safety
/// `params` and `form` must be live handles and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ikeda_verify_prime(
    params: *const IkedaParams,
    form: *const IkedaEigenform,
    p: u64,
    out: *mut *mut IkedaReport,
) -> IkedaStatus {
    guard(|| {
        let params = &borrow(params, "params")?.0;
        let form = &borrow(form, "form")?.0;
        if form.weight() != params.eigenform_weight() {
            return Err(Fail::invalid(format!(
                "eigenform has weight {}, expected {}",
                form.weight(),
                params.eigenform_weight()
            )));
        }
        let ap = modforms::hecke_eigenvalue_prime(form, p)?;
        let report = ikeda::verify_prime(params, p, &ap)?;
        write_out(out, Box::into_raw(Box::new(IkedaReport(report))), "out")
    })
}

/// # Safety
/// `report` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ikeda_report_free(report: *mut IkedaReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// True when the routes agree and `λ_F(p)` is positive and within bounds.
///
/// # Safety
/// `report` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ikeda_report_passed(report: *const IkedaReport) -> bool {
    report.as_ref().is_some_and(|r| r.0.passed())
}

/// `λ_F(p)` as a decimal string.
///
/// # Safety
/// `report` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ikeda_report_lambda(
    report: *const IkedaReport,
    out: *mut *mut c_char,
) -> IkedaStatus {
    guard(|| {
        let r = borrow(report, "report")?;
        write_out(out, into_c_string(r.0.lambda.to_string()), "out")
    })
}

/// Lower and upper bounds truncated to `digits` decimals.
///
/// # Safety
/// `report` must be a live handle; `lower` and `upper` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ikeda_report_bounds(
    report: *const IkedaReport,
    digits: usize,
    lower: *mut *mut c_char,
    upper: *mut *mut c_char,
) -> IkedaStatus {
    guard(|| {
        let r = borrow(report, "report")?;
        if lower.is_null() || upper.is_null() {
            return Err(Fail::null("bound output"));
        }
        lower.write(into_c_string(r.0.lower.to_decimal(digits)));
        upper.write(into_c_string(r.0.upper.to_decimal(digits)));
        Ok(())
    })
}

/// Gaussian binomial `[n m]_q`, rendered as a polynomial in `q`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ikeda_qbinomial(n: i64, m: i64, out: *mut *mut c_char) -> IkedaStatus {
    guard(|| {
        let poly = qseries::q_binomial(n, m)?;
        write_out(out, into_c_string(poly.display_in("q")), "out")
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ptr;

    #[test]
    fn panics_become_internal() {
        let status = guard(|| panic!("boom"));
        assert_eq!(status, IkedaStatus::Internal);
        let message = unsafe { CStr::from_ptr(ikeda_last_error()) };
        assert!(message.to_str().unwrap().contains("boom"));
    }

    #[test]
    fn null_out_is_reported() {
        let status = unsafe { ikeda_params_new(2, 10, ptr::null_mut()) };
        assert_eq!(status, IkedaStatus::NullPointer);
    }
}
