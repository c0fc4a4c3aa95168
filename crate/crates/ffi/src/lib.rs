//! C ABI for the `qdl` library.
//!
//! Every fallible function returns a [`QdlStatus`] and writes its result
//! through an out-pointer. On failure the message is kept per thread and can
//! be read with [`qdl_last_error_message`]. Characters and prime tables are
//! opaque heap handles released with their `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};

use num_complex::Complex64;
use qdl::arith::{jacobi_symbol, sieve_squarefree_odd, PrimeTable, QuadChar};
use qdl::charsums::jutila_moment;
use qdl::lfunc::{functional_equation_residual, LEvaluator};
use qdl::moments::{exponent_e, g_function};
use qdl::zeta::{prime_sum_cos, prime_sum_reciprocal, riemann_zeta};
use qdl::QdlError;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QdlStatus {
    Ok = 0,
    InvalidArgument = 1,
    NotOddSquarefree = 2,
    TableLimit = 3,
    Pole = 4,
    ModulusTooLarge = 5,
    Budget = 6,
    Quadrature = 7,
    DegenerateSchedule = 8,
    Numerical = 9,
    Parse = 10,
    Io = 11,
    NullPointer = 12,
    Panic = 13,
}

/// Opaque character `χ^(8d)`.
pub struct QdlChar(QuadChar);

/// Opaque prime table.
pub struct QdlPrimeTable(PrimeTable);

thread_local! {
    static LAST_ERROR: RefCell<Vec<u8>> = const { RefCell::new(Vec::new()) };
}

fn set_error(msg: String) {
    LAST_ERROR.with(|e| {
        let mut v = msg.into_bytes();
        v.retain(|&b| b != 0);
        *e.borrow_mut() = v;
    });
}

fn status_of(e: &QdlError) -> QdlStatus {
    match e {
        QdlError::InvalidArgument(_) => QdlStatus::InvalidArgument,
        QdlError::NotOddSquarefree(_) => QdlStatus::NotOddSquarefree,
        QdlError::TableLimit { .. } => QdlStatus::TableLimit,
        QdlError::Pole { .. } => QdlStatus::Pole,
        QdlError::ModulusTooLarge { .. } => QdlStatus::ModulusTooLarge,
        QdlError::Budget { .. } => QdlStatus::Budget,
        QdlError::Quadrature(_) => QdlStatus::Quadrature,
        QdlError::DegenerateSchedule(_) => QdlStatus::DegenerateSchedule,
        QdlError::Numerical(_) => QdlStatus::Numerical,
        QdlError::Parse { .. } => QdlStatus::Parse,
        QdlError::Io(_) => QdlStatus::Io,
    }
}

/// Runs `f`, turning errors and panics into status codes.
fn guard<F>(f: F) -> QdlStatus
where
    F: FnOnce() -> Result<(), QdlStatus>,
{
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => QdlStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("internal panic".into());
            QdlStatus::Panic
        }
    }
}

fn lift<T>(r: qdl::Result<T>) -> Result<T, QdlStatus> {
    r.map_err(|e| {
        set_error(e.to_string());
        status_of(&e)
    })
}

fn out<'a, T>(p: *mut T) -> Result<&'a mut T, QdlStatus> {
    // SAFETY: caller promises a valid, aligned, writable pointer or null.
    unsafe { p.as_mut() }.ok_or_else(|| {
        set_error("null output pointer".into());
        QdlStatus::NullPointer
    })
}

fn handle<'a, T>(p: *const T) -> Result<&'a T, QdlStatus> {
    // SAFETY: non-null handles come from the matching `_new` function.
    unsafe { p.as_ref() }.ok_or_else(|| {
        set_error("null handle".into());
        QdlStatus::NullPointer
    })
}

/// Copies the last error message of this thread into `buf` (NUL-terminated,
/// truncated to `len`). Returns the full message length without the NUL.
///
/// # Safety
/// `buf` must be null or valid for `len` bytes.
#[no_mangle]
pub unsafe extern "C" fn qdl_last_error_message(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| {
        let msg = e.borrow();
        if !buf.is_null() && len > 0 {
            let n = msg.len().min(len - 1);
            std::ptr::copy_nonoverlapping(msg.as_ptr() as *const c_char, buf, n);
            *buf.add(n) = 0;
        }
        msg.len()
    })
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn qdl_version() -> *const c_char {
    static V: &CStr = match CStr::from_bytes_with_nul(concat!(env!("CARGO_PKG_VERSION"), "\0").as_bytes()) {
        Ok(v) => v,
        Err(_) => panic!("version string"),
    };
    V.as_ptr()
}

/// Jacobi symbol `(a/n)` for odd `n > 0`.
///
/// # Safety
/// `out_value` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qdl_jacobi(a: i64, n: u64, out_value: *mut i8) -> QdlStatus {
    guard(|| {
        *out(out_value)? = lift(jacobi_symbol(a, n))?;
        Ok(())
    })
}

/// Number of odd square-free `d ≤ x`.
///
/// # Safety
/// `out_count` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qdl_squarefree_odd_count(x: u64, out_count: *mut u64) -> QdlStatus {
    guard(|| {
        *out(out_count)? = sieve_squarefree_odd(x).len() as u64;
        Ok(())
    })
}

/// Creates the character `χ^(8d)`; `d` must be odd and square-free.
///
/// # Safety
/// `out_handle` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qdl_char_new(d: u64, out_handle: *mut *mut QdlChar) -> QdlStatus {
    guard(|| {
        let slot = out(out_handle)?;
        let ch = lift(QuadChar::new(d))?;
        *slot = Box::into_raw(Box::new(QdlChar(ch)));
        Ok(())
    })
}

/// # Safety
/// `h` must be null or a handle from [`qdl_char_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qdl_char_free(h: *mut QdlChar) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Modulus `8d`; 0 for a null handle.
///
/// # Safety
/// `h` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qdl_char_modulus(h: *const QdlChar) -> u64 {
    h.as_ref().map_or(0, |c| c.0.modulus())
}

/// `χ(n)` in {−1, 0, 1}.
///
/// # Safety
/// `h` must be a live handle and `out_value` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qdl_char_chi(h: *const QdlChar, n: u64, out_value: *mut i8) -> QdlStatus {
    guard(|| {
        let c = handle(h)?;
        *out(out_value)? = c.0.chi(n);
        Ok(())
    })
}

/// `L(s, χ)` by the routed evaluator.
///
/// # Safety
/// `h` must be a live handle; output pointers valid.
#[no_mangle]
pub unsafe extern "C" fn qdl_l_value(
    h: *const QdlChar,
    re: f64,
    im: f64,
    out_re: *mut f64,
    out_im: *mut f64,
) -> QdlStatus {
    guard(|| {
        let c = handle(h)?;
        let v = lift(LEvaluator::default().value(c.0, Complex64::new(re, im)))?;
        *out(out_re)? = v.value.re;
        *out(out_im)? = v.value.im;
        Ok(())
    })
}

/// Relative residual `|Λ(s) − Λ(1−s)| / |Λ(s)|`.
///
/// # Safety
/// `h` must be a live handle; `out_residual` valid.
#[no_mangle]
pub unsafe extern "C" fn qdl_functional_equation_residual(
    h: *const QdlChar,
    re: f64,
    im: f64,
    out_residual: *mut f64,
) -> QdlStatus {
    guard(|| {
        let c = handle(h)?;
        *out(out_residual)? = lift(functional_equation_residual(c.0, Complex64::new(re, im)))?;
        Ok(())
    })
}

/// Sieves the primes up to `limit`.
///
/// # Safety
/// `out_handle` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qdl_prime_table_new(limit: u64, out_handle: *mut *mut QdlPrimeTable) -> QdlStatus {
    guard(|| {
        let slot = out(out_handle)?;
        let t = lift(PrimeTable::primes_only(limit))?;
        *slot = Box::into_raw(Box::new(QdlPrimeTable(t)));
        Ok(())
    })
}

/// # Safety
/// `h` must be null or a handle from [`qdl_prime_table_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qdl_prime_table_free(h: *mut QdlPrimeTable) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Number of primes in the table; 0 for a null handle.
///
/// # Safety
/// `h` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qdl_prime_table_len(h: *const QdlPrimeTable) -> u64 {
    h.as_ref().map_or(0, |t| t.0.primes().len() as u64)
}

/// `Σ_{p ≤ x} 1/p`.
///
/// # Safety
/// `h` must be a live handle; `out_sum` valid.
#[no_mangle]
pub unsafe extern "C" fn qdl_prime_sum_reciprocal(h: *const QdlPrimeTable, x: f64, out_sum: *mut f64) -> QdlStatus {
    guard(|| {
        let t = handle(h)?;
        *out(out_sum)? = lift(prime_sum_reciprocal(x, &t.0))?;
        Ok(())
    })
}

/// `Σ_{p ≤ x} cos(α log p)/p`.
///
/// # Safety
/// `h` must be a live handle; `out_sum` valid.
#[no_mangle]
pub unsafe extern "C" fn qdl_prime_sum_cos(
    h: *const QdlPrimeTable,
    x: f64,
    alpha: f64,
    out_sum: *mut f64,
) -> QdlStatus {
    guard(|| {
        let t = handle(h)?;
        *out(out_sum)? = lift(prime_sum_cos(x, alpha, &t.0))?;
        Ok(())
    })
}

/// Riemann `ζ(s)` for `Re s > 0`.
///
/// # Safety
/// Output pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn qdl_zeta(re: f64, im: f64, out_re: *mut f64, out_im: *mut f64) -> QdlStatus {
    guard(|| {
        let z = lift(riemann_zeta(Complex64::new(re, im)))?;
        *out(out_re)? = z.re;
        *out(out_im)? = z.im;
        Ok(())
    })
}

/// Jutila moment `S_m(X, Y)`; nonzero `force` lifts the work budget.
///
/// # Safety
/// `out_value` must be valid.
#[no_mangle]
pub unsafe extern "C" fn qdl_jutila_moment(x: f64, y: f64, m: f64, force: i32, out_value: *mut f64) -> QdlStatus {
    guard(|| {
        *out(out_value)? = lift(jutila_moment(x, y, m, force != 0))?;
        Ok(())
    })
}

/// `E(m, k, ε)`.
///
/// # Safety
/// `out_value` must be valid.
#[no_mangle]
pub unsafe extern "C" fn qdl_exponent_e(m: f64, k: u32, eps: f64, out_value: *mut f64) -> QdlStatus {
    guard(|| {
        *out(out_value)? = lift(exponent_e(m, k, eps))?;
        Ok(())
    })
}

/// `g(x)` at family size `X`.
///
/// # Safety
/// `out_value` must be valid.
#[no_mangle]
pub unsafe extern "C" fn qdl_g_function(x: f64, big_x: f64, out_value: *mut f64) -> QdlStatus {
    guard(|| {
        *out(out_value)? = lift(g_function(x, big_x))?;
        Ok(())
    })
}
