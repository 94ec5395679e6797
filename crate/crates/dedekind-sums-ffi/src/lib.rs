//! C ABI for the dedekind-sums library.
//!
//! Exact rationals cross the boundary as opaque handles; callers read them
//! out as `"num/den"` strings. Every fallible entry point returns a
//! [`DsStatus`] and writes its result through an out-pointer. Strings and
//! handles returned by this library must be released with the matching
//! `ds_*_free` function.
//!
//! The C header is generated into `include/dedekind_sums.h` at build time.

use std::ffi::{c_char, CString};
use std::ptr;

use dedekind_sums::{Error, Rational};

/// Status codes: `Ok` on success; `ContractFailure` marks an internal
/// consistency failure (two evaluation routes disagreeing);
/// `InvalidArgument` marks a violated precondition; `NullPointer` marks a
/// null out-pointer.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DsStatus {
    Ok = 0,
    ContractFailure = 1,
    InvalidArgument = 2,
    NullPointer = 3,
}

/// Opaque exact rational number.
pub struct DsRational(Rational);

fn status_of(e: &Error) -> DsStatus {
    match e {
        Error::InvalidInput(_) => DsStatus::InvalidArgument,
        Error::Contract(_) => DsStatus::ContractFailure,
    }
}

/// # Safety
/// `out` must be a valid pointer to a `*mut DsRational` slot.
unsafe fn deliver(
    out: *mut *mut DsRational,
    value: dedekind_sums::Result<Rational>,
) -> DsStatus {
    if out.is_null() {
        return DsStatus::NullPointer;
    }
    match value {
        Ok(r) => {
            *out = Box::into_raw(Box::new(DsRational(r)));
            DsStatus::Ok
        }
        Err(e) => {
            *out = ptr::null_mut();
            status_of(&e)
        }
    }
}

/// Library version as a static string; do not free.
#[no_mangle]
pub extern "C" fn ds_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// `s(h, k)` by the O(k) defining sum.
///
/// # Safety
/// `out` must be a valid pointer to a `*mut DsRational` slot.
#[no_mangle]
pub unsafe extern "C" fn ds_dedekind_naive(
    h: i64,
    k: i64,
    out: *mut *mut DsRational,
) -> DsStatus {
    deliver(out, dedekind_sums::dedekind_naive(h, k))
}

/// `s(h, k)` by the O(log k) continued-fraction formula.
///
/// # Safety
/// `out` must be a valid pointer to a `*mut DsRational` slot.
#[no_mangle]
pub unsafe extern "C" fn ds_dedekind_fast(h: i64, k: i64, out: *mut *mut DsRational) -> DsStatus {
    deliver(out, dedekind_sums::dedekind_fast(h, k))
}

/// `s(h, k)` extended to negative modulus by `s(h, -k) = -s(h, k) - 1/2`.
///
/// # Safety
/// `out` must be a valid pointer to a `*mut DsRational` slot.
#[no_mangle]
pub unsafe extern "C" fn ds_dedekind_signed(
    h: i64,
    k: i64,
    out: *mut *mut DsRational,
) -> DsStatus {
    deliver(out, dedekind_sums::dedekind_signed(h, k))
}

/// Reciprocity residual `s(h,k) + s(k,h) - (h^2+k^2+1)/(12hk) + 1/4`;
/// exactly zero on coprime positive pairs.
///
/// # Safety
/// `out` must be a valid pointer to a `*mut DsRational` slot.
#[no_mangle]
pub unsafe extern "C" fn ds_reciprocity_residual(
    h: i64,
    k: i64,
    out: *mut *mut DsRational,
) -> DsStatus {
    deliver(out, dedekind_sums::reciprocity_residual(h, k))
}

/// Exact 2m-th moment `sum_{(h,k)=1} s(h,k)^(2m)`.
///
/// # Safety
/// `out` must be a valid pointer to a `*mut DsRational` slot.
#[no_mangle]
pub unsafe extern "C" fn ds_moment(k: i64, m: u32, out: *mut *mut DsRational) -> DsStatus {
    deliver(out, dedekind_sums::moment(k, m))
}

/// The exact constant `2 zeta(2m)^2 / zeta(4m)`.
///
/// # Safety
/// `out` must be a valid pointer to a `*mut DsRational` slot.
#[no_mangle]
pub unsafe extern "C" fn ds_moment_constant(m: u32, out: *mut *mut DsRational) -> DsStatus {
    if m < 1 {
        if !out.is_null() {
            *out = ptr::null_mut();
        }
        return DsStatus::InvalidArgument;
    }
    deliver(out, Ok(dedekind_sums::moment_constant(m)))
}

/// The multiplicative moment coefficient `f_m(k)`, exactly.
///
/// # Safety
/// `out` must be a valid pointer to a `*mut DsRational` slot.
#[no_mangle]
pub unsafe extern "C" fn ds_fm(k: i64, m: u32, out: *mut *mut DsRational) -> DsStatus {
    deliver(out, dedekind_sums::fm(k, m))
}

/// Canonical continued-fraction expansion of `a/q` as a string like
/// `"[0;2,3]"`, written through `out`; free with [`ds_string_free`].
///
/// # Safety
/// `out` must be a valid pointer to a `*mut c_char` slot.
#[no_mangle]
pub unsafe extern "C" fn ds_cf_expand(a: i64, q: i64, out: *mut *mut c_char) -> DsStatus {
    if out.is_null() {
        return DsStatus::NullPointer;
    }
    match dedekind_sums::cf_expand(a, q) {
        Ok(cf) => {
            let s = CString::new(cf.to_string()).expect("no interior NUL");
            *out = s.into_raw();
            DsStatus::Ok
        }
        Err(e) => {
            *out = ptr::null_mut();
            status_of(&e)
        }
    }
}

/// Render a rational exactly as `"num/den"` (plain `"n"` for integers);
/// free with [`ds_string_free`]. Returns NULL if `r` is NULL.
///
/// # Safety
/// `r` must be a live handle from this library or NULL.
#[no_mangle]
pub unsafe extern "C" fn ds_rational_to_string(r: *const DsRational) -> *mut c_char {
    if r.is_null() {
        return ptr::null_mut();
    }
    CString::new((*r).0.to_string())
        .map_or(ptr::null_mut(), CString::into_raw)
}

/// Lossy conversion to double, for display-grade use.
///
/// # Safety
/// `r` must be a live handle from this library or NULL.
#[no_mangle]
pub unsafe extern "C" fn ds_rational_to_double(r: *const DsRational) -> f64 {
    if r.is_null() {
        return f64::NAN;
    }
    (*r).0.to_f64()
}

/// Release a rational handle. NULL is ignored.
///
/// # Safety
/// `r` must be a handle previously returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ds_rational_free(r: *mut DsRational) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// Release a string allocated by this library. NULL is ignored.
///
/// # Safety
/// `s` must be a string previously returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ds_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
