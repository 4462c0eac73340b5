//! C interface to the workbench.
//!
//! Every function returns an [`OctalabStatus`]. On failure a description is
//! kept per thread and can be read with [`octalab_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::ptr;

use octalab::report::Report;
use octalab::workbench::{Config, Instance, Suite, Workbench};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OctalabStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    BufferTooSmall = 3,
    /// The suite ran but at least one claim failed.
    CheckFailed = 4,
    Internal = 5,
    Panic = 6,
}

/// Opaque handle owning the lazily built objects.
pub struct OctalabWorkbench {
    inner: Workbench,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

#[derive(Debug)]
struct Failure(OctalabStatus, String);

impl Failure {
    fn null(what: &str) -> Failure {
        Failure(OctalabStatus::NullPointer, format!("{what} is null"))
    }

    fn invalid(msg: impl Into<String>) -> Failure {
        Failure(OctalabStatus::InvalidArgument, msg.into())
    }

    fn internal(e: impl std::fmt::Display) -> Failure {
        Failure(OctalabStatus::Internal, e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<OctalabStatus, Failure>) -> OctalabStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(status)) => status,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("panic: {msg}"));
            OctalabStatus::Panic
        }
    }
}

unsafe fn handle<'a>(wb: *const OctalabWorkbench) -> Result<&'a Workbench, Failure> {
    wb.as_ref().map(|w| &w.inner).ok_or_else(|| Failure::null("workbench"))
}

unsafe fn out_ref<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or_else(|| Failure::null(what))
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure::null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Failure::invalid(format!("{what} is not UTF-8")))
}

fn parse_suite(name: &str) -> Result<Suite, Failure> {
    Ok(match name {
        "group" => Suite::Group,
        "octagon" => Suite::Octagon,
        "suborbits" => Suite::Suborbits,
        "quads" => Suite::Quads,
        "family" => Suite::Family(None),
        "family:o2" => Suite::Family(Some(Instance::Octagon)),
        "family:product" => Suite::Family(Some(Instance::Product)),
        "aut" => Suite::Aut,
        "gewirtz" => Suite::Gewirtz,
        "all" => Suite::All,
        _ => return Err(Failure::invalid(format!("unknown suite {name:?}"))),
    })
}

/// Creates a workbench. `cache_dir` may be null to disable the group cache;
/// `budget` 0 selects the default element budget.
///
/// # Safety
/// `cache_dir` must be null or a NUL-terminated string; `out` must be valid
/// for writes.
#[no_mangle]
pub unsafe extern "C" fn octalab_workbench_new(
    cache_dir: *const c_char,
    budget: usize,
    seed: u64,
    out: *mut *mut OctalabWorkbench,
) -> OctalabStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        *out = ptr::null_mut();
        let mut config = Config { seed, ..Config::default() };
        if !cache_dir.is_null() {
            config.cache_dir = Some(PathBuf::from(str_arg(cache_dir, "cache_dir")?));
        }
        if budget > 0 {
            config.budget = budget;
        }
        *out = Box::into_raw(Box::new(OctalabWorkbench { inner: Workbench::new(config) }));
        Ok(OctalabStatus::Ok)
    })
}

/// # Safety
/// `wb` must be null or a handle from [`octalab_workbench_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn octalab_workbench_free(wb: *mut OctalabWorkbench) {
    if !wb.is_null() {
        drop(Box::from_raw(wb));
    }
}

/// Order of the group acting on the plane (80640).
///
/// # Safety
/// `wb` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn octalab_group_order(wb: *const OctalabWorkbench, out: *mut u64) -> OctalabStatus {
    guard(|| {
        let w = handle(wb)?;
        let out = out_ref(out, "out")?;
        *out = w.group().map_err(Failure::internal)?.order() as u64;
        Ok(OctalabStatus::Ok)
    })
}

/// # Safety
/// `wb` must be a live handle; `points` and `lines` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn octalab_octagon_size(
    wb: *const OctalabWorkbench,
    points: *mut usize,
    lines: *mut usize,
) -> OctalabStatus {
    guard(|| {
        let w = handle(wb)?;
        let points = out_ref(points, "points")?;
        let lines = out_ref(lines, "lines")?;
        let o = w.octagon().map_err(Failure::internal)?;
        *points = o.geometry.num_points();
        *lines = o.geometry.num_lines();
        Ok(OctalabStatus::Ok)
    })
}

/// Writes the three points of line `index`.
///
/// # Safety
/// `wb` must be a live handle and `out` valid for three writes.
#[no_mangle]
pub unsafe extern "C" fn octalab_octagon_line(
    wb: *const OctalabWorkbench,
    index: usize,
    out: *mut u32,
) -> OctalabStatus {
    guard(|| {
        let w = handle(wb)?;
        if out.is_null() {
            return Err(Failure::null("out"));
        }
        let g = &w.octagon().map_err(Failure::internal)?.geometry;
        if index >= g.num_lines() {
            return Err(Failure::invalid(format!("line {index} out of range 0..{}", g.num_lines())));
        }
        let line = g.line(index);
        ptr::copy_nonoverlapping(line.as_ptr(), out, line.len());
        Ok(OctalabStatus::Ok)
    })
}

/// Distance between two points in the collinearity graph.
///
/// # Safety
/// `wb` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn octalab_octagon_distance(
    wb: *const OctalabWorkbench,
    a: usize,
    b: usize,
    out: *mut u32,
) -> OctalabStatus {
    guard(|| {
        let w = handle(wb)?;
        let out = out_ref(out, "out")?;
        let g = &w.octagon().map_err(Failure::internal)?.geometry;
        let n = g.num_points();
        if a >= n || b >= n {
            return Err(Failure::invalid(format!("point out of range 0..{n}")));
        }
        *out = u32::from(g.distance(a, b));
        Ok(OctalabStatus::Ok)
    })
}

/// Runs a suite and returns its reports as a JSON array in `json_out`, to be
/// released with [`octalab_string_free`]. Suite names are those of the
/// command-line tool, plus `family:o2` and `family:product`. Returns
/// `CHECK_FAILED` with the JSON still set when a claim fails.
///
/// # Safety
/// `wb` must be a live handle, `suite` a NUL-terminated string and
/// `json_out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn octalab_run_suite(
    wb: *const OctalabWorkbench,
    suite: *const c_char,
    json_out: *mut *mut c_char,
) -> OctalabStatus {
    guard(|| {
        let w = handle(wb)?;
        let json_out = out_ref(json_out, "json_out")?;
        *json_out = ptr::null_mut();
        let suite = parse_suite(str_arg(suite, "suite")?)?;
        let reports = w.run(suite).map_err(Failure::internal)?;
        let json = serde_json::to_string_pretty(&reports).map_err(Failure::internal)?;
        *json_out = CString::new(json).map_err(Failure::internal)?.into_raw();
        if reports.iter().all(Report::passed) {
            Ok(OctalabStatus::Ok)
        } else {
            set_error("one or more claims failed");
            Ok(OctalabStatus::CheckFailed)
        }
    })
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn octalab_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Copies the last error of the calling thread, NUL-terminated, into `buf`.
/// `needed` receives the required size including the terminator (1 when
/// there is no error). Returns `BUFFER_TOO_SMALL` if `cap` is less.
///
/// # Safety
/// `buf` must be valid for `cap` writes (or null with `cap` 0) and `needed`
/// valid for writes.
#[no_mangle]
pub unsafe extern "C" fn octalab_last_error(buf: *mut c_char, cap: usize, needed: *mut usize) -> OctalabStatus {
    let needed = match needed.as_mut() {
        Some(n) => n,
        None => return OctalabStatus::NullPointer,
    };
    LAST_ERROR.with(|e| {
        let e = e.borrow();
        let bytes = e.as_ref().map(|c| c.as_bytes_with_nul()).unwrap_or(b"\0");
        *needed = bytes.len();
        if cap < bytes.len() {
            return OctalabStatus::BufferTooSmall;
        }
        if buf.is_null() {
            return OctalabStatus::NullPointer;
        }
        ptr::copy_nonoverlapping(bytes.as_ptr().cast::<c_char>(), buf, bytes.len());
        OctalabStatus::Ok
    })
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn octalab_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn panics_become_status() {
        let status = guard(|| panic!("boom"));
        assert_eq!(status, OctalabStatus::Panic);
        let msg = LAST_ERROR.with(|e| e.borrow().clone()).unwrap();
        assert_eq!(msg.to_str().unwrap(), "panic: boom");
    }

    #[test]
    fn suite_names() {
        assert_eq!(parse_suite("all").ok(), Some(Suite::All));
        assert_eq!(parse_suite("family:product").ok(), Some(Suite::Family(Some(Instance::Product))));
        assert!(parse_suite("Family").is_err());
    }
}
