//! C interface to `eacp`.
//!
//! Algebras are opaque handles. Every fallible call returns an
//! [`EacpStatus`]; on failure the message is available from
//! [`eacp_last_error_message`] on the same thread. Strings handed out by the
//! library are released with [`eacp_string_free`].

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use eacp::catalog::{build_canonical, CatalogId};
use eacp::expr::parse_element;
use eacp::periodicity::{self, PeriodKind};
use eacp::report;
use eacp::simplicity::{self, Verdict};
use eacp::{format, Algebra, EacpError};
use libc::{c_char, c_int};

/// Opaque algebra handle.
pub struct EacpAlgebra {
    inner: Algebra,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EacpStatus {
    Ok = 0,
    /// Malformed input or invalid argument.
    InputError = 1,
    /// The question could not be decided (uncertified numerics).
    Undetermined = 2,
    /// A verification step failed.
    CheckFailed = 3,
    NullPointer = 4,
    /// A Rust panic was caught at the boundary.
    Internal = 5,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EacpPeriodKind {
    Finite = 0,
    Infinite = 1,
    /// Not decided within the cutoff; `value` holds the cutoff.
    Unknown = 2,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EacpPeriod {
    pub kind: EacpPeriodKind,
    pub value: u64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let s = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(s).ok());
}

fn fail(e: EacpError) -> EacpStatus {
    set_error(e.to_string());
    EacpStatus::InputError
}

/// Runs `f`, turning panics into [`EacpStatus::Internal`].
fn guard(f: impl FnOnce() -> EacpStatus) -> EacpStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => {
            set_error("internal error (panic caught at the C boundary)");
            EacpStatus::Internal
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, EacpStatus> {
    if p.is_null() {
        set_error("null string argument");
        return Err(EacpStatus::NullPointer);
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error("string argument is not valid UTF-8");
        EacpStatus::InputError
    })
}

fn give_string(s: String, out: *mut *mut c_char) -> EacpStatus {
    match CString::new(s) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            EacpStatus::Ok
        }
        Err(_) => {
            set_error("output contains an interior NUL byte");
            EacpStatus::Internal
        }
    }
}

fn give_algebra(alg: Algebra, out: *mut *mut EacpAlgebra) -> EacpStatus {
    unsafe { *out = Box::into_raw(Box::new(EacpAlgebra { inner: alg })) };
    EacpStatus::Ok
}

/// Parses an algebra from its JSON description.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn eacp_algebra_from_json(json: *const c_char, out: *mut *mut EacpAlgebra) -> EacpStatus {
    guard(|| {
        if out.is_null() {
            set_error("null output pointer");
            return EacpStatus::NullPointer;
        }
        let text = match read_str(json) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match format::algebra_from_json(text) {
            Ok(alg) => give_algebra(alg, out),
            Err(e) => fail(e),
        }
    })
}

/// Builds a catalog algebra such as `3d:C6(1,1)`.
///
/// # Safety
/// `id` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn eacp_algebra_from_catalog(id: *const c_char, out: *mut *mut EacpAlgebra) -> EacpStatus {
    guard(|| {
        if out.is_null() {
            set_error("null output pointer");
            return EacpStatus::NullPointer;
        }
        let text = match read_str(id) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match text.parse::<CatalogId>().and_then(|id| build_canonical(&id)) {
            Ok(alg) => give_algebra(alg, out),
            Err(e) => fail(e),
        }
    })
}

/// Releases a handle; null is ignored.
///
/// # Safety
/// `alg` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn eacp_algebra_free(alg: *mut EacpAlgebra) {
    if !alg.is_null() {
        drop(Box::from_raw(alg));
    }
}

/// Total dimension `n + 1`.
///
/// # Safety
/// `alg` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn eacp_algebra_dim(alg: *const EacpAlgebra, out: *mut usize) -> EacpStatus {
    guard(|| {
        if alg.is_null() || out.is_null() {
            set_error("null pointer");
            return EacpStatus::NullPointer;
        }
        *out = (*alg).inner.dim();
        EacpStatus::Ok
    })
}

/// Product of two elements written as linear expressions (`1/2 h1 + r`);
/// the result is written in the same syntax.
///
/// # Safety
/// `alg` must be a live handle, `x` and `y` NUL-terminated strings and `out`
/// a valid pointer. The returned string must be freed with
/// [`eacp_string_free`].
#[no_mangle]
pub unsafe extern "C" fn eacp_multiply(
    alg: *const EacpAlgebra,
    x: *const c_char,
    y: *const c_char,
    out: *mut *mut c_char,
) -> EacpStatus {
    guard(|| {
        if alg.is_null() || out.is_null() {
            set_error("null pointer");
            return EacpStatus::NullPointer;
        }
        let alg = &(*alg).inner;
        let (xs, ys) = match (read_str(x), read_str(y)) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(s), _) | (_, Err(s)) => return s,
        };
        let res = parse_element(xs, alg.n())
            .and_then(|xe| parse_element(ys, alg.n()).map(|ye| (xe, ye)))
            .and_then(|(xe, ye)| alg.multiply(&xe, &ye));
        match res {
            Ok(p) => give_string(p.display(), out),
            Err(e) => fail(e),
        }
    })
}

fn period_out(kind: PeriodKind) -> EacpPeriod {
    match kind {
        PeriodKind::Finite(m) => EacpPeriod { kind: EacpPeriodKind::Finite, value: m },
        PeriodKind::Infinite => EacpPeriod { kind: EacpPeriodKind::Infinite, value: 0 },
        PeriodKind::Unknown(m) => EacpPeriod { kind: EacpPeriodKind::Unknown, value: m },
    }
}

unsafe fn period_call(
    alg: *const EacpAlgebra,
    i: usize,
    m_max: u64,
    out: *mut EacpPeriod,
    plenary: bool,
) -> EacpStatus {
    guard(|| {
        if alg.is_null() || out.is_null() {
            set_error("null pointer");
            return EacpStatus::NullPointer;
        }
        let alg = &(*alg).inner;
        let m_max = if m_max == 0 { periodicity::default_mmax(alg.n()) } else { m_max };
        let res = if plenary {
            periodicity::plenary_period(alg, i, m_max)
        } else {
            periodicity::right_period(alg, i, m_max)
        };
        match res {
            Ok(r) => {
                *out = period_out(r.kind);
                if matches!(r.kind, PeriodKind::Unknown(_)) {
                    set_error(r.certificate);
                    EacpStatus::Undetermined
                } else {
                    EacpStatus::Ok
                }
            }
            Err(e) => fail(e),
        }
    })
}

/// Right period of `h_{i+1}` (`i` is 0-based); `m_max = 0` selects the
/// default cutoff.
///
/// # Safety
/// `alg` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn eacp_right_period(
    alg: *const EacpAlgebra,
    i: usize,
    m_max: u64,
    out: *mut EacpPeriod,
) -> EacpStatus {
    period_call(alg, i, m_max, out, false)
}

/// Plenary period of `h_{i+1}` (`i` is 0-based); `m_max = 0` selects the
/// default cutoff.
///
/// # Safety
/// `alg` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn eacp_plenary_period(
    alg: *const EacpAlgebra,
    i: usize,
    m_max: u64,
    out: *mut EacpPeriod,
) -> EacpStatus {
    period_call(alg, i, m_max, out, true)
}

/// Writes 1 if the algebra is simple and 0 if not; returns
/// [`EacpStatus::Undetermined`] when the search could not be certified.
///
/// # Safety
/// `alg` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn eacp_is_simple(alg: *const EacpAlgebra, out: *mut c_int) -> EacpStatus {
    guard(|| {
        if alg.is_null() || out.is_null() {
            set_error("null pointer");
            return EacpStatus::NullPointer;
        }
        match simplicity::is_simple(&(*alg).inner) {
            Ok(rep) => match rep.verdict {
                Verdict::Simple => {
                    *out = 1;
                    EacpStatus::Ok
                }
                Verdict::NotSimple(_) => {
                    *out = 0;
                    EacpStatus::Ok
                }
                Verdict::Undetermined(reason) => {
                    set_error(reason);
                    EacpStatus::Undetermined
                }
            },
            Err(e) => fail(e),
        }
    })
}

/// Canonical form report as JSON (`delta`, `algebra`, `basis_change`).
///
/// # Safety
/// `alg` must be a live handle and `out` a valid pointer. The returned
/// string must be freed with [`eacp_string_free`].
#[no_mangle]
pub unsafe extern "C" fn eacp_canonical_form_json(alg: *const EacpAlgebra, out: *mut *mut c_char) -> EacpStatus {
    guard(|| {
        if alg.is_null() || out.is_null() {
            set_error("null pointer");
            return EacpStatus::NullPointer;
        }
        match report::canonical_form(&(*alg).inner) {
            Ok(rep) if rep.outcome == report::Outcome::Success => give_string(rep.json.to_string(), out),
            Ok(_) => {
                set_error("canonical form failed verification");
                EacpStatus::CheckFailed
            }
            Err(e) => fail(e),
        }
    })
}

/// Message of the last failure on this thread, or null. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn eacp_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Frees a string returned by this library; null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn eacp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
