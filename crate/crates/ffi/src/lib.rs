//! C ABI for quandlekit.
//!
//! Quandles cross the boundary as opaque `QkQuandle` handles created by the
//! `qk_quandle_*` constructors and released with [`qk_quandle_free`]. Every
//! fallible function returns a [`QkStatus`] and writes results through out
//! pointers; the message for the last failure on the calling thread is
//! available from [`qk_last_error`]. Strings returned to the caller are owned
//! by the caller and released with [`qk_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use quandlekit::lattice::{quotient_shape, DeltaVariant};
use quandlekit::ring::{power_assoc_witness, quandle_ring, CoefficientSearch, Integers, Rationals};
use quandlekit::symmetry::{
    enumerate_quandles, is_left_2transitive, is_right_2transitive, is_right_orbit_2transitive, quandles_isomorphic,
    EnumerationOptions,
};
use quandlekit::{Error, Quandle};

/// Result codes. Values 2 to 5 agree with the command-line exit codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QkStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    AxiomViolation = 4,
    Capacity = 5,
    Panic = 6,
}

/// Opaque quandle handle.
pub struct QkQuandle {
    inner: Quandle,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn status_of(e: &Error) -> QkStatus {
    match e {
        Error::Parse(_) | Error::RaggedRow { .. } | Error::EntryOutOfRange { .. } | Error::EmptyQuandle => {
            QkStatus::Parse
        }
        Error::AxiomViolation(_) => QkStatus::AxiomViolation,
        Error::Capacity(_) => QkStatus::Capacity,
        _ => QkStatus::InvalidArgument,
    }
}

/// Runs `f`, recording errors and converting panics into [`QkStatus::Panic`].
fn guard(f: impl FnOnce() -> Result<(), (QkStatus, String)>) -> QkStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => QkStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            QkStatus::Panic
        }
    }
}

fn lib<T>(r: quandlekit::Result<T>) -> Result<T, (QkStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn null() -> (QkStatus, String) {
    (QkStatus::NullPointer, "null pointer argument".into())
}

unsafe fn deref<'a, T>(p: *const T) -> Result<&'a T, (QkStatus, String)> {
    p.as_ref().ok_or_else(null)
}

unsafe fn emit<T>(out: *mut T, value: T) -> Result<(), (QkStatus, String)> {
    if out.is_null() {
        return Err(null());
    }
    out.write(value);
    Ok(())
}

unsafe fn emit_handle(out: *mut *mut QkQuandle, q: Quandle) -> Result<(), (QkStatus, String)> {
    if out.is_null() {
        return Err(null());
    }
    out.write(Box::into_raw(Box::new(QkQuandle { inner: q })));
    Ok(())
}

unsafe fn emit_string(out: *mut *mut c_char, s: String) -> Result<(), (QkStatus, String)> {
    let c = CString::new(s).map_err(|e| (QkStatus::InvalidArgument, e.to_string()))?;
    emit(out, c.into_raw())
}

/// Message for the last failure on this thread, or null. Valid until the next
/// failing call on the same thread; do not free.
#[no_mangle]
pub extern "C" fn qk_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn qk_status_str(status: QkStatus) -> *const c_char {
    let s: &'static CStr = match status {
        QkStatus::Ok => c"ok",
        QkStatus::NullPointer => c"null pointer",
        QkStatus::InvalidArgument => c"invalid argument",
        QkStatus::Parse => c"parse error",
        QkStatus::AxiomViolation => c"quandle axiom violated",
        QkStatus::Capacity => c"capacity exceeded",
        QkStatus::Panic => c"internal panic",
    };
    s.as_ptr()
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qk_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `q` must be null or a handle returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qk_quandle_free(q: *mut QkQuandle) {
    if !q.is_null() {
        drop(Box::from_raw(q));
    }
}

/// Dihedral quandle `R_n` on `Z_n`.
///
/// # Safety
/// `out` must be valid for writing a handle.
#[no_mangle]
pub unsafe extern "C" fn qk_quandle_dihedral(n: usize, out: *mut *mut QkQuandle) -> QkStatus {
    guard(|| emit_handle(out, lib(quandlekit::quandle::dihedral_quandle(n))?))
}

/// Trivial quandle of order `n`.
///
/// # Safety
/// `out` must be valid for writing a handle.
#[no_mangle]
pub unsafe extern "C" fn qk_quandle_trivial(n: usize, out: *mut *mut QkQuandle) -> QkStatus {
    guard(|| emit_handle(out, lib(quandlekit::quandle::trivial_quandle(n))?))
}

/// Alexander quandle on `Z_n` with parameter `t`.
///
/// # Safety
/// `out` must be valid for writing a handle.
#[no_mangle]
pub unsafe extern "C" fn qk_quandle_alexander(n: usize, t: i64, out: *mut *mut QkQuandle) -> QkStatus {
    guard(|| emit_handle(out, lib(quandlekit::quandle::alexander_quandle(n, t))?))
}

/// Builds a quandle from a row-major `n × n` table with entry `(i, j) = i ▷ j`.
///
/// # Safety
/// `table` must point to `n * n` readable values and `out` must be valid for
/// writing a handle.
#[no_mangle]
pub unsafe extern "C" fn qk_quandle_from_table(n: usize, table: *const u32, out: *mut *mut QkQuandle) -> QkStatus {
    guard(|| {
        if table.is_null() {
            return Err(null());
        }
        let len = n.checked_mul(n).ok_or((QkStatus::InvalidArgument, "table too large".to_string()))?;
        let flat = std::slice::from_raw_parts(table, len);
        let rows: Vec<Vec<usize>> = flat.chunks(n.max(1)).map(|r| r.iter().map(|&v| v as usize).collect()).collect();
        emit_handle(out, lib(Quandle::from_rows(&rows))?)
    })
}

/// Parses `{"n": .., "table": [[..], ..]}`.
///
/// # Safety
/// `json` must be a nul-terminated string and `out` valid for writing a handle.
#[no_mangle]
pub unsafe extern "C" fn qk_quandle_from_json(json: *const c_char, out: *mut *mut QkQuandle) -> QkStatus {
    guard(|| {
        if json.is_null() {
            return Err(null());
        }
        let text = CStr::from_ptr(json).to_str().map_err(|e| (QkStatus::Parse, e.to_string()))?;
        emit_handle(out, lib(Quandle::from_json(text))?)
    })
}

/// Serializes to the JSON table format; free the result with [`qk_string_free`].
///
/// # Safety
/// `q` must be a live handle and `out` valid for writing a pointer.
#[no_mangle]
pub unsafe extern "C" fn qk_quandle_to_json(q: *const QkQuandle, out: *mut *mut c_char) -> QkStatus {
    guard(|| emit_string(out, deref(q)?.inner.to_json()))
}

/// # Safety
/// `q` must be a live handle and `out` valid for writing.
#[no_mangle]
pub unsafe extern "C" fn qk_quandle_size(q: *const QkQuandle, out: *mut usize) -> QkStatus {
    guard(|| emit(out, deref(q)?.inner.size()))
}

/// `i ▷ j`.
///
/// # Safety
/// `q` must be a live handle and `out` valid for writing.
#[no_mangle]
pub unsafe extern "C" fn qk_quandle_op(q: *const QkQuandle, i: usize, j: usize, out: *mut usize) -> QkStatus {
    guard(|| {
        let x = &deref(q)?.inner;
        let n = x.size();
        if i >= n || j >= n {
            return Err((QkStatus::InvalidArgument, format!("index out of range for size {n}")));
        }
        emit(out, x.op(i, j))
    })
}

/// Writes `λ_1, …, λ_n` (orbit counts by size) into `buf`, which must hold
/// `len ≥ n` values.
///
/// # Safety
/// `q` must be a live handle and `buf` valid for `len` writes.
#[no_mangle]
pub unsafe extern "C" fn qk_quandle_partition_type(q: *const QkQuandle, buf: *mut usize, len: usize) -> QkStatus {
    guard(|| {
        let lambda = deref(q)?.inner.partition_type();
        if buf.is_null() {
            return Err(null());
        }
        if len < lambda.len() {
            return Err((QkStatus::InvalidArgument, format!("buffer holds {len}, need {}", lambda.len())));
        }
        std::ptr::copy_nonoverlapping(lambda.as_ptr(), buf, lambda.len());
        Ok(())
    })
}

/// Transitivity flags: `Inn(X)` 2-transitive on `X`, every orbit group
/// 2-transitive on its orbit, and the left-translation semigroup
/// 2-transitive on `X`.
///
/// # Safety
/// `q` must be a live handle; the out pointers must be valid for writing.
#[no_mangle]
pub unsafe extern "C" fn qk_quandle_transitivity(
    q: *const QkQuandle,
    right: *mut bool,
    right_orbit: *mut bool,
    left: *mut bool,
) -> QkStatus {
    guard(|| {
        let x = &deref(q)?.inner;
        if right.is_null() || right_orbit.is_null() || left.is_null() {
            return Err(null());
        }
        let l = lib(is_left_2transitive(x))?;
        right.write(is_right_2transitive(x));
        right_orbit.write(is_right_orbit_2transitive(x));
        left.write(l);
        Ok(())
    })
}

/// # Safety
/// `x`, `y` must be live handles and `out` valid for writing.
#[no_mangle]
pub unsafe extern "C" fn qk_quandles_isomorphic(x: *const QkQuandle, y: *const QkQuandle, out: *mut bool) -> QkStatus {
    guard(|| {
        let found = lib(quandles_isomorphic(&deref(x)?.inner, &deref(y)?.inner))?;
        emit(out, found.is_some())
    })
}

/// Whether the default coefficient box over the rationals contains an
/// element violating power associativity.
///
/// # Safety
/// `q` must be a live handle and `out` valid for writing.
#[no_mangle]
pub unsafe extern "C" fn qk_power_assoc_violated(q: *const QkQuandle, out: *mut bool) -> QkStatus {
    guard(|| {
        let w = lib(power_assoc_witness(&deref(q)?.inner, Rationals, &CoefficientSearch::default()))?;
        emit(out, w.is_some())
    })
}

/// Number of isomorphism classes of quandles of order `n` (at most 6).
///
/// # Safety
/// `out` must be valid for writing.
#[no_mangle]
pub unsafe extern "C" fn qk_enumerate_count(n: usize, out: *mut usize) -> QkStatus {
    guard(|| emit(out, lib(enumerate_quandles(n, EnumerationOptions::default()))?.len()))
}

/// `Δ^k/Δ^{k+1}` of the integral quandle ring of `q` under the default
/// Δ-power, as a string such as `"Z ⊕ Z_4"`; free with [`qk_string_free`].
///
/// # Safety
/// `q` must be a live handle and `out` valid for writing a pointer.
#[no_mangle]
pub unsafe extern "C" fn qk_delta_quotient(q: *const QkQuandle, k: usize, out: *mut *mut c_char) -> QkStatus {
    guard(|| {
        if k == 0 {
            return Err((QkStatus::InvalidArgument, "k starts at 1".into()));
        }
        let r = quandle_ring(&deref(q)?.inner, Integers);
        let s = lib(quandlekit::lattice::delta_series(&r, k + 1, DeltaVariant::default()))?;
        let shape = lib(quotient_shape(&s[k - 1], &s[k]))?;
        emit_string(out, shape.to_string())
    })
}
