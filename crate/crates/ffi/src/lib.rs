//! C ABI for the deltahall engine.
//!
//! Every call returns a [`DhStatus`]. On failure the message is kept per thread and
//! can be read with [`dh_last_error_message`]. Strings handed out by this library
//! must be released with [`dh_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::str::FromStr;

use deltahall::checks::{run_check, Suite};
use deltahall::cli::{table_json, Table};
use deltahall::delta::{delta_hall_number, DeltaAlgebra};
use deltahall::error::Error;
use deltahall::quiver::Quiver;
use deltahall::repcat::Caps;

/// Result codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DhStatus {
    Ok = 0,
    /// An identity check found a counterexample.
    CheckFailed = 1,
    /// Bad configuration, non-prime q, exceeded cap or too small a bound.
    Config = 2,
    NullPointer = 3,
    InvalidUtf8 = 4,
    OutOfRange = 5,
    Internal = 6,
    Panic = 7,
}

/// Opaque engine: catalog, Hall tables and Delta-Hall structure constants.
pub struct DhEngine {
    delta: DeltaAlgebra,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let s = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(s).ok());
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn from_engine(e: Error) -> DhStatus {
    let status = if e.is_configuration() { DhStatus::Config } else { DhStatus::Internal };
    set_error(e.to_string());
    status
}

fn guard(f: impl FnOnce() -> DhStatus) -> DhStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => {
            set_error("panic inside deltahall");
            DhStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, DhStatus> {
    if p.is_null() {
        set_error("null string argument");
        return Err(DhStatus::NullPointer);
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error("argument is not UTF-8");
        DhStatus::InvalidUtf8
    })
}

unsafe fn live<'a>(e: *const DhEngine) -> Result<&'a DhEngine, DhStatus> {
    e.as_ref().ok_or_else(|| {
        set_error("null engine");
        DhStatus::NullPointer
    })
}

unsafe fn hand_out(s: String, out: *mut *mut c_char) -> DhStatus {
    match CString::new(s) {
        Ok(c) => {
            *out = c.into_raw();
            DhStatus::Ok
        }
        Err(_) => {
            set_error("output contains a NUL byte");
            DhStatus::Internal
        }
    }
}

macro_rules! try_status {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(s) => return s,
        }
    };
}

/// Builds an engine for the quiver JSON `{"vertices": n, "arrows": [[s, t], ...]}`.
///
/// # Safety
/// `quiver_json` must be a NUL-terminated string, `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn dh_engine_new(
    quiver_json: *const c_char,
    q: u64,
    max_dim: u32,
    out: *mut *mut DhEngine,
) -> DhStatus {
    guard(|| {
        if out.is_null() {
            set_error("null output pointer");
            return DhStatus::NullPointer;
        }
        *out = ptr::null_mut();
        let text = try_status!(read_str(quiver_json));
        let quiver = try_status!(Quiver::from_json_str(text).map_err(|e| from_engine(e.into())));
        let delta = try_status!(DeltaAlgebra::build(&quiver, q, max_dim, Caps::default()).map_err(from_engine));
        *out = Box::into_raw(Box::new(DhEngine { delta }));
        DhStatus::Ok
    })
}

/// # Safety
/// `engine` must come from [`dh_engine_new`] or be null.
#[no_mangle]
pub unsafe extern "C" fn dh_engine_free(engine: *mut DhEngine) {
    if !engine.is_null() {
        drop(Box::from_raw(engine));
    }
}

/// Number of isoclasses in the catalog.
///
/// # Safety
/// `engine` must be live, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dh_engine_class_count(engine: *const DhEngine, out: *mut usize) -> DhStatus {
    guard(|| {
        let e = try_status!(live(engine));
        if out.is_null() {
            set_error("null output pointer");
            return DhStatus::NullPointer;
        }
        *out = e.delta.catalog().len();
        DhStatus::Ok
    })
}

/// Catalog as JSON.
///
/// # Safety
/// `engine` must be live, `out` writable. Free the result with [`dh_string_free`].
#[no_mangle]
pub unsafe extern "C" fn dh_engine_catalog_json(engine: *const DhEngine, out: *mut *mut c_char) -> DhStatus {
    guard(|| {
        let e = try_status!(live(engine));
        if out.is_null() {
            set_error("null output pointer");
            return DhStatus::NullPointer;
        }
        hand_out(e.delta.catalog().to_json().to_string(), out)
    })
}

/// Structure-constant table (`hall`, `delta`, `derived`, `ext`, `twisted`) as a JSON array.
///
/// # Safety
/// `engine` must be live, `which` NUL-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dh_engine_table_json(
    engine: *const DhEngine,
    which: *const c_char,
    out: *mut *mut c_char,
) -> DhStatus {
    guard(|| {
        let e = try_status!(live(engine));
        let name = try_status!(read_str(which));
        if out.is_null() {
            set_error("null output pointer");
            return DhStatus::NullPointer;
        }
        let table = try_status!(Table::from_str(name).map_err(from_engine));
        let rows = try_status!(table_json(&e.delta, table, None).map_err(from_engine));
        hand_out(serde_json::Value::Array(rows).to_string(), out)
    })
}

fn check_ids(e: &DhEngine, ids: &[usize]) -> Result<(), DhStatus> {
    let n = e.delta.catalog().len();
    match ids.iter().find(|&&i| i >= n) {
        Some(i) => {
            set_error(format!("class id {i} out of range (catalog has {n})"));
            Err(DhStatus::OutOfRange)
        }
        None => Ok(()),
    }
}

/// Hall number F^m_{a,b}: submodules of m isomorphic to b with quotient a.
///
/// # Safety
/// `engine` must be live, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dh_engine_hall_number(
    engine: *const DhEngine,
    a: usize,
    b: usize,
    m: usize,
    out: *mut u64,
) -> DhStatus {
    guard(|| {
        let e = try_status!(live(engine));
        try_status!(check_ids(e, &[a, b, m]));
        if out.is_null() {
            set_error("null output pointer");
            return DhStatus::NullPointer;
        }
        *out = e.delta.tables().hall_number(a, b, m);
        DhStatus::Ok
    })
}

/// Delta-Hall number as JSON `{"a": "p/q", "b": "p/q"}` meaning a + b*sqrt(q).
///
/// # Safety
/// `engine` must be live, `out` writable. Free the result with [`dh_string_free`].
#[no_mangle]
pub unsafe extern "C" fn dh_engine_delta_hall_number(
    engine: *const DhEngine,
    a: usize,
    b: usize,
    m: usize,
    out: *mut *mut c_char,
) -> DhStatus {
    guard(|| {
        let e = try_status!(live(engine));
        try_status!(check_ids(e, &[a, b, m]));
        if out.is_null() {
            set_error("null output pointer");
            return DhStatus::NullPointer;
        }
        let c = delta_hall_number(e.delta.tables(), a, b, m);
        hand_out(c.to_json().to_string(), out)
    })
}

/// Runs a check suite. Returns [`DhStatus::CheckFailed`] when a counterexample exists;
/// the report is written to `out` in both cases.
///
/// # Safety
/// `engine` must be live, `suite` NUL-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dh_engine_run_check(
    engine: *const DhEngine,
    suite: *const c_char,
    out: *mut *mut c_char,
) -> DhStatus {
    guard(|| {
        let e = try_status!(live(engine));
        let name = try_status!(read_str(suite));
        if out.is_null() {
            set_error("null output pointer");
            return DhStatus::NullPointer;
        }
        *out = ptr::null_mut();
        let suite = try_status!(Suite::from_str(name).map_err(from_engine));
        let report = try_status!(run_check(&e.delta, suite, None).map_err(from_engine));
        let status = hand_out(report.to_json(&e.delta).to_string(), out);
        if status != DhStatus::Ok {
            return status;
        }
        if report.passed() {
            DhStatus::Ok
        } else {
            set_error(format!("{suite}: {} failures", report.failures.len()));
            DhStatus::CheckFailed
        }
    })
}

/// # Safety
/// `s` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn dh_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message of the last failed call on this thread, or null. Valid until the next call.
#[no_mangle]
pub extern "C" fn dh_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}
