//! C interface to `mtf-core`.
//!
//! Fans are created behind an opaque handle and released with
//! [`mtf_fan_free`]. Every fallible call returns an [`MtfStatus`]; on failure
//! a message is available from [`mtf_last_error`] on the same thread.
//! Strings handed out by the library must be released with
//! [`mtf_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use mtf_core::input::load_module;
use mtf_core::mtf::{build_mtf_fan, MTFFan};
use mtf_core::oracle::{verify_dim_formula, verify_fan, verify_point, verify_structure, SampleSet, VerifyOptions};
use mtf_core::output::{to_json_string, ClassifyJson, FanJson};
use mtf_core::presets::preset;
use mtf_core::stability::StabilityVector;
use mtf_core::Error;

/// Status codes returned by every fallible function.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MtfStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidInput = 4,
    ResourceLimit = 5,
    Internal = 6,
    Panic = 7,
}

/// Opaque handle to a computed fan.
pub struct MtfFan {
    inner: MTFFan,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn status_of(err: &Error) -> MtfStatus {
    match err {
        Error::Parse { .. } | Error::UnknownPreset(_) => MtfStatus::Parse,
        Error::ResourceLimit(_) => MtfStatus::ResourceLimit,
        Error::Inconsistent(_) | Error::Io(_) => MtfStatus::Internal,
        _ => MtfStatus::InvalidInput,
    }
}

fn guard(f: impl FnOnce() -> Result<(), MtfStatus>) -> MtfStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => MtfStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("panic inside mtf");
            MtfStatus::Panic
        }
    }
}

fn fail(err: Error) -> MtfStatus {
    let status = status_of(&err);
    set_error(err.to_string());
    status
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, MtfStatus> {
    if p.is_null() {
        set_error("null string argument");
        return Err(MtfStatus::NullPointer);
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error("string argument is not valid UTF-8");
        MtfStatus::InvalidUtf8
    })
}

unsafe fn fan_ref<'a>(fan: *const MtfFan) -> Result<&'a MTFFan, MtfStatus> {
    fan.as_ref().map(|f| &f.inner).ok_or_else(|| {
        set_error("null fan handle");
        MtfStatus::NullPointer
    })
}

fn check_out<T>(out: *mut T) -> Result<(), MtfStatus> {
    if out.is_null() {
        set_error("null output pointer");
        return Err(MtfStatus::NullPointer);
    }
    Ok(())
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

fn store_fan(result: mtf_core::Result<MTFFan>, out: *mut *mut MtfFan) -> Result<(), MtfStatus> {
    let inner = result.map_err(fail)?;
    unsafe { *out = Box::into_raw(Box::new(MtfFan { inner })) };
    Ok(())
}

/// Builds the fan of a built-in module (`a2-P1`, `a2-S1`, `nakayama2-121`,
/// `square-lambda`).
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` a valid pointer. On
/// success `*out` owns a handle to be released with `mtf_fan_free`.
#[no_mangle]
pub unsafe extern "C" fn mtf_fan_from_preset(name: *const c_char, out: *mut *mut MtfFan) -> MtfStatus {
    guard(|| {
        check_out(out)?;
        let name = read_str(name)?;
        store_fan(preset(name).and_then(|m| build_mtf_fan(&m)), out)
    })
}

/// Builds the fan of a module given as a JSON document.
///
/// # Safety
/// Same contract as `mtf_fan_from_preset`.
#[no_mangle]
pub unsafe extern "C" fn mtf_fan_from_json(json: *const c_char, out: *mut *mut MtfFan) -> MtfStatus {
    guard(|| {
        check_out(out)?;
        let json = read_str(json)?;
        store_fan(load_module(json).and_then(|m| build_mtf_fan(&m)), out)
    })
}

/// Releases a fan handle. Null is ignored.
///
/// # Safety
/// `fan` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn mtf_fan_free(fan: *mut MtfFan) {
    if !fan.is_null() {
        drop(Box::from_raw(fan));
    }
}

/// Number of cones of the fan.
///
/// # Safety
/// `fan` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mtf_fan_cone_count(fan: *const MtfFan, out: *mut usize) -> MtfStatus {
    guard(|| {
        check_out(out)?;
        *out = fan_ref(fan)?.len();
        Ok(())
    })
}

/// Number of vertices of the underlying quiver, i.e. the ambient dimension.
///
/// # Safety
/// `fan` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mtf_fan_dimension(fan: *const MtfFan, out: *mut usize) -> MtfStatus {
    guard(|| {
        check_out(out)?;
        *out = fan_ref(fan)?.n();
        Ok(())
    })
}

/// The fan as JSON, in the same format as `mtf fan`.
///
/// # Safety
/// `fan` must be a live handle and `out` a valid pointer. On success `*out`
/// must be released with `mtf_string_free`.
#[no_mangle]
pub unsafe extern "C" fn mtf_fan_to_json(fan: *const MtfFan, out: *mut *mut c_char) -> MtfStatus {
    guard(|| {
        check_out(out)?;
        let text = to_json_string(&FanJson::new(fan_ref(fan)?)).map_err(fail)?;
        *out = into_c_string(text);
        Ok(())
    })
}

/// Locates a stability vector given as comma-separated rationals and writes
/// the cone id. If `out_json` is not null, it receives the classification
/// report as JSON.
///
/// # Safety
/// `fan` must be a live handle, `theta` a NUL-terminated string and
/// `out_cone` a valid pointer. A string written to `out_json` must be
/// released with `mtf_string_free`.
#[no_mangle]
pub unsafe extern "C" fn mtf_fan_classify(
    fan: *const MtfFan,
    theta: *const c_char,
    out_cone: *mut usize,
    out_json: *mut *mut c_char,
) -> MtfStatus {
    guard(|| {
        check_out(out_cone)?;
        let fan = fan_ref(fan)?;
        let theta: StabilityVector = read_str(theta)?.parse().map_err(fail)?;
        *out_cone = fan.locate(&theta).map_err(fail)?;
        if !out_json.is_null() {
            let report = verify_point(fan, &theta);
            let doc = ClassifyJson::new(fan, &theta, report).map_err(fail)?;
            *out_json = into_c_string(to_json_string(&doc).map_err(fail)?);
        }
        Ok(())
    })
}

/// Runs the sampling oracle and the structural checks; writes the number
/// of violations.
///
/// # Safety
/// `fan` must be a live handle and `out_violations` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mtf_fan_verify(
    fan: *const MtfFan,
    bound: i64,
    seed: u64,
    out_violations: *mut usize,
) -> MtfStatus {
    guard(|| {
        check_out(out_violations)?;
        let fan = fan_ref(fan)?;
        if bound < 0 {
            set_error("negative grid bound");
            return Err(MtfStatus::InvalidInput);
        }
        let samples = SampleSet::new(fan, bound, seed);
        let options = VerifyOptions {
            seed,
            ..VerifyOptions::default()
        };
        let v = verify_fan(fan, &samples, options);
        *out_violations = v.report.violations.len()
            + verify_structure(fan, bound).violations.len()
            + verify_dim_formula(fan).violations.len();
        Ok(())
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn mtf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message of the last failure on this thread, or null. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn mtf_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}
