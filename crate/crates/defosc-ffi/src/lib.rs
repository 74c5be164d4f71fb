//! C ABI for the defosc library: opaque handles, integer error codes, and a
//! thread-local last-error message.
//!
//! Handles are null-checked before dereferencing; passing a pointer that is
//! non-null but invalid is undefined behaviour, as in any C API.
#![allow(clippy::not_unsafe_ptr_arg_deref)]

use std::cell::RefCell;
use std::ffi::{c_char, c_double, c_int, CString};
use std::ptr;

use defosc::error::Error;
use defosc::fockrep::FockRep;
use defosc::DeformationParams;

/// Status codes returned by every fallible function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DefoscStatus {
    Ok = 0,
    /// Invalid or degenerate parameters.
    InvalidParams = 1,
    /// The requested representation or level is not admissible.
    NotAdmissible = 2,
    /// Series evaluation failed to converge.
    NoConvergence = 3,
    /// A convention required by the closed form is violated.
    ConventionViolation = 4,
    /// The truncated space is too small for the request.
    GuardBand = 5,
    /// A null pointer or out-of-range argument was passed.
    BadArgument = 6,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(e: &Error) -> DefoscStatus {
    let status = match e {
        Error::DegenerateDeformation | Error::InvalidParameter(_) => DefoscStatus::InvalidParams,
        Error::NoAdmissibleRegime
        | Error::NegativeRadicand { .. }
        | Error::NonPositiveStructureFunction(_) => DefoscStatus::NotAdmissible,
        Error::NonConvergence { .. } | Error::VanishingDenominator { .. } => {
            DefoscStatus::NoConvergence
        }
        Error::ConventionViolation(_) => DefoscStatus::ConventionViolation,
        Error::GuardBandExceeded { .. } => DefoscStatus::GuardBand,
    };
    let msg = CString::new(e.to_string()).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(msg));
    status
}

fn clear_error() {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
}

/// Message of the last error on this thread, or null when the last call
/// succeeded.  The pointer stays valid until the next failing call on the
/// same thread.
#[no_mangle]
pub extern "C" fn defosc_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| {
        slot.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr())
    })
}

/// Opaque deformation-parameter handle.
pub struct DefoscParams(DeformationParams);

/// Opaque truncated-representation handle.
pub struct DefoscRep(FockRep);

/// Allocate a parameter handle.  Returns null when any field is
/// non-positive or non-finite (chi0 may be any finite value).
#[no_mangle]
pub extern "C" fn defosc_params_new(
    p: c_double,
    q: c_double,
    alpha: c_double,
    nu: c_double,
    phi1: c_double,
    phi2: c_double,
    chi0: c_double,
) -> *mut DefoscParams {
    clear_error();
    let params = DeformationParams::new(p, q, alpha, nu, phi1, phi2, chi0);
    match params.check_fields() {
        Ok(()) => Box::into_raw(Box::new(DefoscParams(params))),
        Err(e) => {
            set_error(&e);
            ptr::null_mut()
        }
    }
}

/// Free a parameter handle.  Null is a no-op.
#[no_mangle]
pub extern "C" fn defosc_params_free(params: *mut DefoscParams) {
    if !params.is_null() {
        drop(unsafe { Box::from_raw(params) });
    }
}

/// Validate the parameters for a representation of `max_level + 1` levels.
/// On success writes the regime (0 = A, 1 = B) to `regime_out` when
/// non-null.
#[no_mangle]
pub extern "C" fn defosc_validate(
    params: *const DefoscParams,
    max_level: usize,
    regime_out: *mut c_int,
) -> DefoscStatus {
    clear_error();
    let Some(params) = (unsafe { params.as_ref() }) else {
        return DefoscStatus::BadArgument;
    };
    match defosc::validate(&params.0, max_level) {
        Ok(report) => {
            if !regime_out.is_null() {
                unsafe {
                    *regime_out = match report.regime {
                        defosc::Regime::A => 0,
                        defosc::Regime::B => 1,
                    };
                }
            }
            DefoscStatus::Ok
        }
        Err(e) => set_error(&e),
    }
}

/// Build a truncated representation of dimension `dim`.  Returns null on
/// failure.
#[no_mangle]
pub extern "C" fn defosc_rep_new(params: *const DefoscParams, dim: usize) -> *mut DefoscRep {
    clear_error();
    let Some(params) = (unsafe { params.as_ref() }) else {
        set_error(&Error::InvalidParameter("null params handle".into()));
        return ptr::null_mut();
    };
    match defosc::fockrep::build_rep(&params.0, dim) {
        Ok(rep) => Box::into_raw(Box::new(DefoscRep(rep))),
        Err(e) => {
            set_error(&e);
            ptr::null_mut()
        }
    }
}

/// Free a representation handle.  Null is a no-op.
#[no_mangle]
pub extern "C" fn defosc_rep_free(rep: *mut DefoscRep) {
    if !rep.is_null() {
        drop(unsafe { Box::from_raw(rep) });
    }
}

/// Deformed number [x] for the given parameters.
#[no_mangle]
pub extern "C" fn defosc_deformed_number(
    params: *const DefoscParams,
    x: c_double,
    out: *mut c_double,
) -> DefoscStatus {
    clear_error();
    let (Some(params), false) = (unsafe { params.as_ref() }, out.is_null()) else {
        return DefoscStatus::BadArgument;
    };
    match defosc::qseries::deformed_number(x, &params.0) {
        Ok(v) => {
            unsafe { *out = v };
            DefoscStatus::Ok
        }
        Err(e) => set_error(&e),
    }
}

/// Level-n energy eigenvalue.
#[no_mangle]
pub extern "C" fn defosc_energy(
    params: *const DefoscParams,
    n: usize,
    out: *mut c_double,
) -> DefoscStatus {
    clear_error();
    let (Some(params), false) = (unsafe { params.as_ref() }, out.is_null()) else {
        return DefoscStatus::BadArgument;
    };
    match defosc::fockrep::energy(&params.0, n) {
        Ok(v) => {
            unsafe { *out = v };
            DefoscStatus::Ok
        }
        Err(e) => set_error(&e),
    }
}

/// Fill `out` (length `levels`) with energies E_0 .. E_{levels-1}.
#[no_mangle]
pub extern "C" fn defosc_spectrum(
    params: *const DefoscParams,
    levels: usize,
    out: *mut c_double,
) -> DefoscStatus {
    clear_error();
    let Some(params) = (unsafe { params.as_ref() }) else {
        return DefoscStatus::BadArgument;
    };
    if levels > 0 && out.is_null() {
        return DefoscStatus::BadArgument;
    }
    match defosc::fockrep::spectrum(&params.0, levels) {
        Ok(values) => {
            let slice = unsafe { std::slice::from_raw_parts_mut(out, levels) };
            slice.copy_from_slice(&values);
            DefoscStatus::Ok
        }
        Err(e) => set_error(&e),
    }
}

/// Lowering ladder coefficient: the matrix element <n-1| a |n> of the
/// representation.  Requires 1 <= n < dim.
#[no_mangle]
pub extern "C" fn defosc_rep_ladder_down(
    rep: *const DefoscRep,
    n: usize,
    out: *mut c_double,
) -> DefoscStatus {
    clear_error();
    let (Some(rep), false) = (unsafe { rep.as_ref() }, out.is_null()) else {
        return DefoscStatus::BadArgument;
    };
    if n < 1 || n >= rep.0.dim {
        return DefoscStatus::BadArgument;
    }
    unsafe { *out = rep.0.ladder.down(n) };
    DefoscStatus::Ok
}

/// Run the full algebra residual suite at the given dimension and
/// tolerance; writes 1 to `all_pass_out` when every non-erratum identity
/// passes, else 0.
#[no_mangle]
pub extern "C" fn defosc_verify_algebra(
    params: *const DefoscParams,
    dim: usize,
    tol: c_double,
    all_pass_out: *mut c_int,
) -> DefoscStatus {
    clear_error();
    let (Some(params), false) = (unsafe { params.as_ref() }, all_pass_out.is_null()) else {
        return DefoscStatus::BadArgument;
    };
    match defosc::verify::algebra_suite(&params.0, dim, tol) {
        Ok(report) => {
            unsafe { *all_pass_out = report.all_pass() as c_int };
            DefoscStatus::Ok
        }
        Err(e) => set_error(&e),
    }
}
