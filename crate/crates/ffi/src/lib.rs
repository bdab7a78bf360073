//! C ABI over the `altgen` engine.
//!
//! Every fallible call returns an [`AltgenStatus`]; on anything but
//! `ALTGEN_STATUS_OK` a message is available from [`altgen_last_error`] on
//! the same thread. Strings handed out by the library are released with
//! [`altgen_string_free`], engines with [`altgen_engine_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use altgen::generators::{conjecture_41_check, Verdict};
use altgen::qt_catalan::qt_catalan;
use altgen::{EngineConfig, GradedModule, SliceMode};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AltgenStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Computation = 3,
    Panic = 4,
}

/// Opaque engine handle; owns the slice memo.
pub struct AltgenEngine {
    inner: GradedModule,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn guarded(f: impl FnOnce() -> Result<(), (AltgenStatus, String)>) -> AltgenStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => AltgenStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            AltgenStatus::Panic
        }
    }
}

fn computation(e: altgen::Error) -> (AltgenStatus, String) {
    (AltgenStatus::Computation, e.to_string())
}

fn point_count(n: u32) -> Result<usize, (AltgenStatus, String)> {
    if n == 0 {
        Err((
            AltgenStatus::InvalidArgument,
            "need at least one point".into(),
        ))
    } else {
        Ok(n as usize)
    }
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

/// Message for the last failed call on this thread, or null. The pointer
/// stays valid until the next call into the library on this thread.
#[no_mangle]
pub extern "C" fn altgen_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// New engine with the two primes derived from `seed`. A nonzero
/// `projected` selects the sub-staircase slice model. Null on failure.
#[no_mangle]
pub extern "C" fn altgen_engine_new(seed: u64, projected: i32) -> *mut AltgenEngine {
    let mut out = ptr::null_mut();
    guarded(|| {
        let mode = if projected != 0 {
            SliceMode::Projected
        } else {
            SliceMode::Full
        };
        let inner = GradedModule::new(EngineConfig::from_seed(seed).with_mode(mode))
            .map_err(computation)?;
        out = Box::into_raw(Box::new(AltgenEngine { inner }));
        Ok(())
    });
    out
}

/// # Safety
/// `engine` must be null or a pointer from [`altgen_engine_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn altgen_engine_free(engine: *mut AltgenEngine) {
    if !engine.is_null() {
        drop(Box::from_raw(engine));
    }
}

/// `dim M_{d1,d2}` for `n` points.
///
/// # Safety
/// `engine` must be a live engine and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn altgen_dim_m(
    engine: *const AltgenEngine,
    n: u32,
    d1: u32,
    d2: u32,
    out: *mut u64,
) -> AltgenStatus {
    if engine.is_null() || out.is_null() {
        set_error("null pointer argument");
        return AltgenStatus::NullPointer;
    }
    let engine = &*engine;
    guarded(|| {
        let n = point_count(n)?;
        let slice = engine.inner.dim_m(n, d1, d2).map_err(computation)?;
        *out = slice.dim_m as u64;
        Ok(())
    })
}

/// Coefficient of `q^d1 t^d2` in `C_n(q,t)`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn altgen_qt_coefficient(
    n: u32,
    d1: u32,
    d2: u32,
    out: *mut u64,
) -> AltgenStatus {
    if out.is_null() {
        set_error("null pointer argument");
        return AltgenStatus::NullPointer;
    }
    guarded(|| {
        let n = point_count(n)?;
        *out = qt_catalan(n).coefficient(d1, d2);
        Ok(())
    })
}

/// `C_n(q,t)` as JSON `{"n":..,"coeffs":[[d1,d2,c],..]}`; free with
/// [`altgen_string_free`].
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn altgen_qt_json(n: u32, out: *mut *mut c_char) -> AltgenStatus {
    if out.is_null() {
        set_error("null pointer argument");
        return AltgenStatus::NullPointer;
    }
    guarded(|| {
        let n = point_count(n)?;
        let json = qt_catalan(n).to_json().map_err(computation)?;
        *out = into_c_string(json);
        Ok(())
    })
}

/// Spanning check of the `Δ(D(λ))` generators. Writes 1 to `passed` on
/// PASS and 0 on FAIL; `report_json` may be null, otherwise it receives
/// the full report to free with [`altgen_string_free`].
///
/// # Safety
/// `engine` must be a live engine, `passed` writable, and `report_json`
/// null or writable.
#[no_mangle]
pub unsafe extern "C" fn altgen_conj41(
    engine: *const AltgenEngine,
    n: u32,
    passed: *mut i32,
    report_json: *mut *mut c_char,
) -> AltgenStatus {
    if engine.is_null() || passed.is_null() {
        set_error("null pointer argument");
        return AltgenStatus::NullPointer;
    }
    let engine = &*engine;
    guarded(|| {
        let n = point_count(n)?;
        let report = conjecture_41_check(&engine.inner, n).map_err(computation)?;
        *passed = i32::from(report.verdict == Verdict::Pass);
        if !report_json.is_null() {
            let json = serde_json::to_string(&report)
                .map_err(|e| (AltgenStatus::Computation, e.to_string()))?;
            *report_json = into_c_string(json);
        }
        Ok(())
    })
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn altgen_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
