//! C ABI over the lpbm checking harness.
//!
//! Conventions:
//! - Fixtures are opaque handles created by `lpbm_fixture_builtin` and
//!   released with `lpbm_fixture_free`.
//! - Every fallible function returns an `int32_t` status code; `LPBM_OK`
//!   is zero. On error, `lpbm_last_error` returns a thread-local message
//!   valid until the next failing call on the same thread.
//! - Strings handed out as `const char *` from accessors are borrowed;
//!   strings placed into result structs are owned by the caller and must
//!   be released with `lpbm_string_free`.
//!
//! The matching declarations live in `include/lpbm.h`.

use lpbm::harness::{
    builtin_fixtures, check_inequality, estimate_gz_constant, CheckParams, Fixture, TheoremId,
};
use lpbm::supconv::SValue;
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::str::FromStr;

pub const LPBM_OK: i32 = 0;
pub const LPBM_ERR_NULL_ARGUMENT: i32 = 1;
pub const LPBM_ERR_INVALID_UTF8: i32 = 2;
pub const LPBM_ERR_UNKNOWN_THEOREM: i32 = 3;
pub const LPBM_ERR_INVALID_PARAMETER: i32 = 4;
pub const LPBM_ERR_OUT_OF_RANGE: i32 = 5;
pub const LPBM_ERR_COMPUTE: i32 = 6;

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::new("").unwrap());
}

fn set_error(code: i32, msg: &str) -> i32 {
    let sanitized = msg.replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(sanitized).unwrap_or_default();
    });
    code
}

/// Message for the most recent error on this thread. Borrowed; stable until
/// the next failing call on the same thread. Never null.
#[no_mangle]
pub extern "C" fn lpbm_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn lpbm_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Opaque fixture handle.
pub struct LpbmFixture {
    inner: Fixture,
    name_c: CString,
}

/// Check parameters; mirror of the library defaults via
/// `lpbm_params_default`. `s` is the curvature parameter with `INFINITY`
/// meaning the minimum combination.
#[repr(C)]
#[derive(Clone, Copy)]
pub struct LpbmParams {
    pub p: f64,
    pub t: f64,
    pub s: f64,
    pub lambda_count: usize,
    pub resolution: usize,
    pub tolerance_scale: f64,
}

/// One check outcome. `lambda`/`s` are NaN when the statement does not
/// carry that parameter. `notes` is an owned string; release it with
/// `lpbm_string_free` (it is null only if allocation of the note failed).
#[repr(C)]
pub struct LpbmCheckResult {
    pub p: f64,
    pub t: f64,
    pub lambda: f64,
    pub s: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub applicable: bool,
    pub notes: *mut c_char,
}

fn parse_c_str<'a>(ptr: *const c_char) -> Result<&'a str, i32> {
    if ptr.is_null() {
        return Err(set_error(LPBM_ERR_NULL_ARGUMENT, "null string argument"));
    }
    unsafe { CStr::from_ptr(ptr) }
        .to_str()
        .map_err(|_| set_error(LPBM_ERR_INVALID_UTF8, "string argument is not valid UTF-8"))
}

fn parse_theorem(ptr: *const c_char) -> Result<TheoremId, i32> {
    let name = parse_c_str(ptr)?;
    TheoremId::from_str(name)
        .map_err(|e| set_error(LPBM_ERR_UNKNOWN_THEOREM, &format!("{e}")))
}

fn to_check_params(params: &LpbmParams) -> Result<CheckParams, i32> {
    let s = SValue::from_f64(params.s)
        .map_err(|e| set_error(LPBM_ERR_INVALID_PARAMETER, &format!("{e}")))?;
    let cp = CheckParams {
        p: params.p,
        t: params.t,
        s,
        lambda_count: params.lambda_count,
        resolution: params.resolution,
        tolerance_scale: params.tolerance_scale,
    };
    cp.validate()
        .map_err(|e| set_error(LPBM_ERR_INVALID_PARAMETER, &format!("{e}")))?;
    Ok(cp)
}

/// Number of registered inequality identifiers.
#[no_mangle]
pub extern "C" fn lpbm_theorem_count() -> usize {
    TheoremId::ALL.len()
}

/// Name of the identifier at `index`, or null when out of range. Static
/// storage; do not free.
#[no_mangle]
pub extern "C" fn lpbm_theorem_name(index: usize) -> *const c_char {
    match TheoremId::ALL.get(index) {
        Some(id) => match *id {
            TheoremId::Bbl => "BBL\0",
            TheoremId::LpBbl => "LP_BBL\0",
            TheoremId::LpBmiSets => "LP_BMI_SETS\0",
            TheoremId::LpBmiSconcave => "LP_BMI_SCONCAVE\0",
            TheoremId::LpPliProduct => "LP_PLI_PRODUCT\0",
            TheoremId::LpPliSets => "LP_PLI_SETS\0",
            TheoremId::LpBmiProduct => "LP_BMI_PRODUCT\0",
            TheoremId::Lemma1d => "LEMMA_1D\0",
            TheoremId::PlRecovery => "PL_RECOVERY\0",
            TheoremId::Mfi => "MFI\0",
            TheoremId::Ismi => "ISMI\0",
            TheoremId::GzProductMin => "GZ_PRODUCT_MIN\0",
            TheoremId::GzLpProduct => "GZ_LP_PRODUCT\0",
            TheoremId::GzLogconcaveC => "GZ_LOGCONCAVE_C\0",
            TheoremId::GzRadialDecay => "GZ_RADIAL_DECAY\0",
        }
        .as_ptr() as *const c_char,
        None => std::ptr::null(),
    }
}

/// Fill `out` with the default check parameters.
#[no_mangle]
pub extern "C" fn lpbm_params_default(out: *mut LpbmParams) -> i32 {
    if out.is_null() {
        return set_error(LPBM_ERR_NULL_ARGUMENT, "null output pointer");
    }
    let d = CheckParams::default();
    unsafe {
        *out = LpbmParams {
            p: d.p,
            t: d.t,
            s: d.s.as_f64(),
            lambda_count: d.lambda_count,
            resolution: d.resolution,
            tolerance_scale: d.tolerance_scale,
        };
    }
    LPBM_OK
}

/// Number of built-in fixtures registered for the named inequality.
#[no_mangle]
pub extern "C" fn lpbm_fixture_builtin_count(theorem: *const c_char, out: *mut usize) -> i32 {
    if out.is_null() {
        return set_error(LPBM_ERR_NULL_ARGUMENT, "null output pointer");
    }
    let id = match parse_theorem(theorem) {
        Ok(id) => id,
        Err(code) => return code,
    };
    unsafe { *out = builtin_fixtures(id).len() };
    LPBM_OK
}

/// Create a handle to built-in fixture `index` for the named inequality.
/// The handle must be released with `lpbm_fixture_free`.
#[no_mangle]
pub extern "C" fn lpbm_fixture_builtin(
    theorem: *const c_char,
    index: usize,
    out: *mut *mut LpbmFixture,
) -> i32 {
    if out.is_null() {
        return set_error(LPBM_ERR_NULL_ARGUMENT, "null output pointer");
    }
    let id = match parse_theorem(theorem) {
        Ok(id) => id,
        Err(code) => return code,
    };
    let mut fixtures = builtin_fixtures(id);
    if index >= fixtures.len() {
        return set_error(
            LPBM_ERR_OUT_OF_RANGE,
            &format!("fixture index {index} out of range (count {})", fixtures.len()),
        );
    }
    let fixture = fixtures.swap_remove(index);
    let name_c = CString::new(fixture.name.replace('\0', " ")).unwrap_or_default();
    let handle = Box::new(LpbmFixture { inner: fixture, name_c });
    unsafe { *out = Box::into_raw(handle) };
    LPBM_OK
}

/// Name of the fixture behind `handle`. Borrowed from the handle; valid
/// while the handle lives. Null if `handle` is null.
#[no_mangle]
pub extern "C" fn lpbm_fixture_name(handle: *const LpbmFixture) -> *const c_char {
    if handle.is_null() {
        return std::ptr::null();
    }
    unsafe { &*handle }.name_c.as_ptr()
}

/// Ambient dimension of the fixture, or 0 if `handle` is null.
#[no_mangle]
pub extern "C" fn lpbm_fixture_dim(handle: *const LpbmFixture) -> usize {
    if handle.is_null() {
        return 0;
    }
    unsafe { &*handle }.inner.dim
}

/// Release a fixture handle. Null is accepted and ignored.
#[no_mangle]
pub extern "C" fn lpbm_fixture_free(handle: *mut LpbmFixture) {
    if !handle.is_null() {
        drop(unsafe { Box::from_raw(handle) });
    }
}

/// Run one inequality check on a fixture. On success fills `out`; the
/// `notes` field is owned by the caller (free with `lpbm_string_free`).
#[no_mangle]
pub extern "C" fn lpbm_check(
    theorem: *const c_char,
    fixture: *const LpbmFixture,
    params: *const LpbmParams,
    out: *mut LpbmCheckResult,
) -> i32 {
    if fixture.is_null() || params.is_null() || out.is_null() {
        return set_error(LPBM_ERR_NULL_ARGUMENT, "null fixture, params, or output pointer");
    }
    let id = match parse_theorem(theorem) {
        Ok(id) => id,
        Err(code) => return code,
    };
    let cp = match to_check_params(unsafe { &*params }) {
        Ok(cp) => cp,
        Err(code) => return code,
    };
    let fixture = unsafe { &*fixture };
    let report = match check_inequality(id, &fixture.inner, &cp) {
        Ok(r) => r,
        Err(e) => return set_error(LPBM_ERR_COMPUTE, &format!("{e}")),
    };
    let notes = CString::new(report.notes.replace('\0', " "))
        .map(CString::into_raw)
        .unwrap_or(std::ptr::null_mut());
    unsafe {
        *out = LpbmCheckResult {
            p: report.p,
            t: report.t,
            lambda: report.lambda.unwrap_or(f64::NAN),
            s: report.s.unwrap_or(f64::NAN),
            lhs: report.lhs,
            rhs: report.rhs,
            margin: report.margin,
            tolerance: report.tolerance,
            pass: report.pass,
            applicable: report.applicable,
            notes,
        };
    }
    LPBM_OK
}

/// Estimate the empirical constant over the built-in log-concave body
/// family at a single (p, t) point taken from `params`. Writes the
/// estimate to `out_c`.
#[no_mangle]
pub extern "C" fn lpbm_gz_constant_builtin(params: *const LpbmParams, out_c: *mut f64) -> i32 {
    if params.is_null() || out_c.is_null() {
        return set_error(LPBM_ERR_NULL_ARGUMENT, "null params or output pointer");
    }
    let cp = match to_check_params(unsafe { &*params }) {
        Ok(cp) => cp,
        Err(code) => return code,
    };
    let fixtures = builtin_fixtures(TheoremId::GzLogconcaveC);
    let est = match estimate_gz_constant(&fixtures, &[cp.p], &[cp.t], &cp) {
        Ok(e) => e,
        Err(e) => return set_error(LPBM_ERR_COMPUTE, &format!("{e}")),
    };
    unsafe { *out_c = est.c };
    LPBM_OK
}

/// Release a string previously handed out in an owned field. Null is
/// accepted and ignored.
#[no_mangle]
pub extern "C" fn lpbm_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}
