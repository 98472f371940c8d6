//! C ABI over the multicut solver.
//!
//! Handles are opaque and owned by the caller once returned; free them with
//! the matching `*_free` function. Every fallible call returns a
//! [`PmcStatus`] and leaves a message for [`pmc_last_error`] on failure.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use planar_multicut::graph::io::parse_instance;
use planar_multicut::graph::{CutSet, Instance};
use planar_multicut::rounding::{solve, RoundingConfig, RoundingReport, DEFAULT_DELTA};
use planar_multicut::separator::SeparatorMode;
use planar_multicut::verify::check_feasible;
use planar_multicut::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PmcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    /// Malformed JSON or an invalid instance.
    Parse = 3,
    InvalidConfig = 4,
    /// Some pair is joined by uncuttable vertices.
    Infeasible = 5,
    /// The cut leaves a pair connected. Never expected.
    FeasibilityCheckFailed = 6,
    /// Any other solver error.
    Solver = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PmcSeparatorMode {
    Cycle = 0,
    Half = 1,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PmcConfig {
    pub delta: f64,
    pub mode: PmcSeparatorMode,
}

/// A parsed instance.
pub struct PmcInstance {
    inner: Instance,
}

/// The result of one solve.
pub struct PmcReport {
    inner: RoundingReport,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).expect("nul bytes were replaced");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn status_of(e: &Error) -> PmcStatus {
    match e {
        Error::InvalidDelta(_) => PmcStatus::InvalidConfig,
        Error::Infeasible { .. } => PmcStatus::Infeasible,
        Error::FeasibilityCheckFailed { .. } => PmcStatus::FeasibilityCheckFailed,
        Error::Parse(_)
        | Error::EmbeddingInvalid { .. }
        | Error::RotationMismatch(_)
        | Error::DuplicateId(_)
        | Error::VertexOutOfRange { .. }
        | Error::NegativeCost(_)
        | Error::TerminalFiniteCost(_)
        | Error::SelfLoop(_)
        | Error::CutContainsTerminal(_) => PmcStatus::Parse,
        _ => PmcStatus::Solver,
    }
}

fn guard(f: impl FnOnce() -> Result<(), (PmcStatus, String)>) -> PmcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => PmcStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("panic inside the solver");
            PmcStatus::Panic
        }
    }
}

fn fail(e: Error) -> (PmcStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (PmcStatus, String) {
    (PmcStatus::NullPointer, format!("{what} is null"))
}

/// Message of the last failed call on this thread, or null. Valid until the
/// next failing call on the same thread.
#[no_mangle]
pub extern "C" fn pmc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

#[no_mangle]
pub extern "C" fn pmc_config_default() -> PmcConfig {
    PmcConfig { delta: DEFAULT_DELTA, mode: PmcSeparatorMode::Cycle }
}

/// Parses an instance from NUL-terminated JSON text.
///
/// # Safety
/// `json` must be null or a valid C string; `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn pmc_instance_from_json(json: *const c_char, out: *mut *mut PmcInstance) -> PmcStatus {
    guard(|| {
        if json.is_null() {
            return Err(null("json"));
        }
        if out.is_null() {
            return Err(null("out"));
        }
        let text = CStr::from_ptr(json)
            .to_str()
            .map_err(|e| (PmcStatus::InvalidUtf8, e.to_string()))?;
        let inner = parse_instance(text).map_err(fail)?;
        *out = Box::into_raw(Box::new(PmcInstance { inner }));
        Ok(())
    })
}

/// # Safety
/// `inst` must be null or a handle from [`pmc_instance_from_json`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pmc_instance_free(inst: *mut PmcInstance) {
    if !inst.is_null() {
        drop(Box::from_raw(inst));
    }
}

/// Vertex count, or 0 for a null handle.
///
/// # Safety
/// `inst` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pmc_instance_vertex_count(inst: *const PmcInstance) -> usize {
    inst.as_ref().map_or(0, |i| i.inner.n())
}

/// Solves the LP and rounds it. A null `config` means the defaults.
///
/// # Safety
/// `inst` must be a live handle, `config` null or valid, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn pmc_solve(
    inst: *const PmcInstance,
    config: *const PmcConfig,
    out: *mut *mut PmcReport,
) -> PmcStatus {
    guard(|| {
        let inst = inst.as_ref().ok_or_else(|| null("instance"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let c = config.as_ref().copied().unwrap_or_else(|| pmc_config_default());
        let mode = match c.mode {
            PmcSeparatorMode::Cycle => SeparatorMode::Cycle,
            PmcSeparatorMode::Half => SeparatorMode::Half,
        };
        let config = RoundingConfig { delta: c.delta, mode, audit: false };
        let inner = solve(&inst.inner, &config).map_err(fail)?;
        *out = Box::into_raw(Box::new(PmcReport { inner }));
        Ok(())
    })
}

/// # Safety
/// `report` must be null or a handle from [`pmc_solve`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pmc_report_free(report: *mut PmcReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// Number of cut vertices, or 0 for a null handle.
///
/// # Safety
/// `report` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pmc_report_cut_len(report: *const PmcReport) -> usize {
    report.as_ref().map_or(0, |r| r.inner.cut.members.len())
}

/// Copies up to `cap` cut vertex ids, ascending, into `buf` and returns the
/// full cut size.
///
/// # Safety
/// `buf` must have room for `cap` values, or be null with `cap == 0`.
#[no_mangle]
pub unsafe extern "C" fn pmc_report_cut(report: *const PmcReport, buf: *mut usize, cap: usize) -> usize {
    let Some(r) = report.as_ref() else {
        return 0;
    };
    let cut = &r.inner.cut.members;
    if !buf.is_null() {
        ptr::copy_nonoverlapping(cut.as_ptr(), buf, cut.len().min(cap));
    }
    cut.len()
}

/// Total cost of the cut, NaN for a null handle.
///
/// # Safety
/// `report` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pmc_report_cost(report: *const PmcReport) -> f64 {
    report.as_ref().map_or(f64::NAN, |r| r.inner.cut.cost)
}

/// LP optimum the cut was rounded from, NaN for a null handle.
///
/// # Safety
/// `report` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pmc_report_lp_value(report: *const PmcReport) -> f64 {
    report.as_ref().map_or(f64::NAN, |r| r.inner.lp_value)
}

/// The full report as JSON; free with [`pmc_string_free`]. Null on error.
///
/// # Safety
/// `report` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn pmc_report_to_json(report: *const PmcReport) -> *mut c_char {
    let Some(r) = report.as_ref() else {
        set_error("report is null");
        return ptr::null_mut();
    };
    match serde_json::to_string(&r.inner).map(CString::new) {
        Ok(Ok(s)) => s.into_raw(),
        _ => {
            set_error("report does not serialize");
            ptr::null_mut()
        }
    }
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pmc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Writes whether deleting the `len` vertices at `cut` separates every pair.
///
/// # Safety
/// `cut` must point to `len` ids (or be null with `len == 0`); `feasible`
/// must be writable.
#[no_mangle]
pub unsafe extern "C" fn pmc_check_feasible(
    inst: *const PmcInstance,
    cut: *const usize,
    len: usize,
    feasible: *mut bool,
) -> PmcStatus {
    guard(|| {
        let inst = inst.as_ref().ok_or_else(|| null("instance"))?;
        if feasible.is_null() {
            return Err(null("feasible"));
        }
        let ids: &[usize] = if len == 0 {
            &[]
        } else if cut.is_null() {
            return Err(null("cut"));
        } else {
            std::slice::from_raw_parts(cut, len)
        };
        let set = CutSet::new(&inst.inner, ids.iter().copied()).map_err(fail)?;
        *feasible = check_feasible(&inst.inner, &set).is_feasible();
        Ok(())
    })
}
