//! C ABI for segcover.
//!
//! Instances, trees and formulas go in as the same JSON documents the
//! command line reads; results come back as JSON strings owned by the caller
//! and released with [`segcover_string_free`]. Every call returns a
//! [`SegcoverStatus`]; on failure [`segcover_last_error`] describes it.

use std::cell::RefCell;
use std::collections::BTreeSet;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use segcover::fpt::{self, CoverError, CoverOutcome, KernelOutcome};
use segcover::geometry::{build_arrangement, is_cover, Arrangement, Mode, SegmentId};
use segcover::io;
use segcover::reduction;
use segcover::subdivision::{self, SubdivTree};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SegcoverStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Geometry = 4,
    /// Exhaustive search needs a budget `k` for an instance this large.
    BudgetRequired = 5,
    /// No cover of size at most `k`; the JSON result says which stage failed.
    NoCover = 6,
    Tree = 7,
    Reduction = 8,
    Panic = 9,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SegcoverMode {
    All = 0,
    Rect = 1,
}

impl From<SegcoverMode> for Mode {
    fn from(m: SegcoverMode) -> Mode {
        match m {
            SegcoverMode::All => Mode::All,
            SegcoverMode::Rect => Mode::Rect,
        }
    }
}

/// Opaque arrangement handle.
pub struct SegcoverArrangement(Arrangement);

/// Opaque split-tree handle.
pub struct SegcoverTree(SubdivTree);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

struct Failure(SegcoverStatus, String);

impl Failure {
    fn new(status: SegcoverStatus, msg: impl ToString) -> Self {
        Failure(status, msg.to_string())
    }
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

/// Runs `f`, records any failure message and converts panics.
fn guarded(f: impl FnOnce() -> Result<SegcoverStatus, Failure>) -> SegcoverStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(status)) => {
            set_error("");
            status
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            SegcoverStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure::new(SegcoverStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(p).to_str().map_err(|e| Failure::new(SegcoverStatus::InvalidUtf8, e))
}

unsafe fn handle<'a, T>(p: *const T) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| Failure::new(SegcoverStatus::NullPointer, "null handle"))
}

unsafe fn emit(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::new(SegcoverStatus::NullPointer, "null output pointer"));
    }
    *out = CString::new(s).expect("JSON has no NUL bytes").into_raw();
    Ok(())
}

fn cover_failure(e: CoverError) -> Failure {
    match e {
        CoverError::BudgetRequired { .. } | CoverError::SizeGuardExceeded { .. } => {
            Failure::new(SegcoverStatus::BudgetRequired, e)
        }
        CoverError::Geometry(g) => Failure::new(SegcoverStatus::Geometry, g),
    }
}

/// Builds the arrangement of an instance document.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn segcover_arrangement_from_json(
    json: *const c_char,
    out: *mut *mut SegcoverArrangement,
) -> SegcoverStatus {
    guarded(|| {
        if out.is_null() {
            return Err(Failure::new(SegcoverStatus::NullPointer, "null output pointer"));
        }
        let segs = io::parse_instance(text(json)?).map_err(|e| Failure::new(SegcoverStatus::Parse, e))?;
        let arr = build_arrangement(&segs).map_err(|e| Failure::new(SegcoverStatus::Geometry, e))?;
        *out = Box::into_raw(Box::new(SegcoverArrangement(arr)));
        Ok(SegcoverStatus::Ok)
    })
}

/// # Safety
/// `arr` must come from [`segcover_arrangement_from_json`] or be null.
#[no_mangle]
pub unsafe extern "C" fn segcover_arrangement_free(arr: *mut SegcoverArrangement) {
    if !arr.is_null() {
        drop(Box::from_raw(arr));
    }
}

/// # Safety
/// `arr` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn segcover_arrangement_cell_count(
    arr: *const SegcoverArrangement,
    out: *mut usize,
) -> SegcoverStatus {
    guarded(|| {
        let arr = handle(arr)?;
        let out = out.as_mut().ok_or_else(|| Failure::new(SegcoverStatus::NullPointer, "null output pointer"))?;
        *out = arr.0.cell_count();
        Ok(SegcoverStatus::Ok)
    })
}

/// Cells report as JSON.
///
/// # Safety
/// `arr` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn segcover_arrangement_cells_json(
    arr: *const SegcoverArrangement,
    out: *mut *mut c_char,
) -> SegcoverStatus {
    guarded(|| {
        let arr = handle(arr)?;
        emit(out, io::cells_json(&arr.0).to_string())?;
        Ok(SegcoverStatus::Ok)
    })
}

/// Sets `*out` to whether the `len` ids at `ids` cover every cell `mode` requires.
///
/// # Safety
/// `ids` must point to `len` readable values (or be null with `len == 0`).
#[no_mangle]
pub unsafe extern "C" fn segcover_is_cover(
    arr: *const SegcoverArrangement,
    ids: *const u32,
    len: usize,
    mode: SegcoverMode,
    out: *mut bool,
) -> SegcoverStatus {
    guarded(|| {
        let arr = handle(arr)?;
        let out = out.as_mut().ok_or_else(|| Failure::new(SegcoverStatus::NullPointer, "null output pointer"))?;
        let slice = match (ids.is_null(), len) {
            (_, 0) => &[][..],
            (true, _) => return Err(Failure::new(SegcoverStatus::NullPointer, "null id array")),
            (false, n) => std::slice::from_raw_parts(ids, n),
        };
        let chosen: BTreeSet<SegmentId> = slice.iter().map(|&i| SegmentId(i)).collect();
        *out = is_cover(&arr.0, &chosen, mode.into()).map_err(|e| Failure::new(SegcoverStatus::Geometry, e))?;
        Ok(SegcoverStatus::Ok)
    })
}

/// Minimum cover as JSON. A negative `k` means unbounded. Returns
/// `NoCover` (with a JSON result naming the failed stage) when no cover of
/// size at most `k` exists.
///
/// # Safety
/// `arr` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn segcover_min_cover(
    arr: *const SegcoverArrangement,
    mode: SegcoverMode,
    k: i64,
    guard: usize,
    out: *mut *mut c_char,
) -> SegcoverStatus {
    guarded(|| {
        let arr = handle(arr)?;
        let mode = Mode::from(mode);
        let k = usize::try_from(k).ok();
        match fpt::min_cover_outcome(&arr.0, mode, k, guard).map_err(cover_failure)? {
            CoverOutcome::Found(cover) => {
                emit(out, io::cover_json(mode, &cover).to_string())?;
                Ok(SegcoverStatus::Ok)
            }
            CoverOutcome::NoCover { stage } => {
                emit(out, io::no_cover_json(mode, k.unwrap_or(0), stage).to_string())?;
                Ok(SegcoverStatus::NoCover)
            }
        }
    })
}

/// Kernel dump for budget `k`; returns `NoCover` when the kernel is infeasible.
///
/// # Safety
/// `arr` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn segcover_kernel_json(
    arr: *const SegcoverArrangement,
    k: usize,
    out: *mut *mut c_char,
) -> SegcoverStatus {
    guarded(|| {
        let arr = handle(arr)?;
        let kr = fpt::kernelize(&fpt::extract_rect_instance(&arr.0, k));
        emit(out, io::kernel_json(&kr).to_string())?;
        Ok(match kr.outcome {
            KernelOutcome::Kernel => SegcoverStatus::Ok,
            KernelOutcome::Infeasible => SegcoverStatus::NoCover,
        })
    })
}

/// Parses and validates a split-tree document.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn segcover_tree_from_json(json: *const c_char, out: *mut *mut SegcoverTree) -> SegcoverStatus {
    guarded(|| {
        if out.is_null() {
            return Err(Failure::new(SegcoverStatus::NullPointer, "null output pointer"));
        }
        let t = io::parse_tree(text(json)?).map_err(|e| Failure::new(SegcoverStatus::Parse, e))?;
        subdivision::validate_tree(&t).map_err(|e| Failure::new(SegcoverStatus::Tree, e))?;
        *out = Box::into_raw(Box::new(SegcoverTree(t)));
        Ok(SegcoverStatus::Ok)
    })
}

/// # Safety
/// `tree` must come from [`segcover_tree_from_json`] or be null.
#[no_mangle]
pub unsafe extern "C" fn segcover_tree_free(tree: *mut SegcoverTree) {
    if !tree.is_null() {
        drop(Box::from_raw(tree));
    }
}

/// Minimum cover of the subdivision, outer face included, as JSON.
///
/// # Safety
/// `tree` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn segcover_tree_dp_cover(tree: *const SegcoverTree, out: *mut *mut c_char) -> SegcoverStatus {
    guarded(|| {
        let tree = handle(tree)?;
        let cover = subdivision::dp_cover(&tree.0).map_err(|e| Failure::new(SegcoverStatus::Tree, e))?;
        emit(out, io::cover_json(Mode::All, &cover).to_string())?;
        Ok(SegcoverStatus::Ok)
    })
}

/// Compiles a formula document into an instance document with budget and layout.
///
/// # Safety
/// `cnf_json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn segcover_compile_3sat(
    cnf_json: *const c_char,
    variant: SegcoverMode,
    out: *mut *mut c_char,
) -> SegcoverStatus {
    guarded(|| {
        let phi = io::parse_cnf(text(cnf_json)?).map_err(|e| Failure::new(SegcoverStatus::Parse, e))?;
        let compiled =
            reduction::compile(&phi, variant.into()).map_err(|e| Failure::new(SegcoverStatus::Reduction, e))?;
        emit(out, io::compiled_json(&compiled).to_string())?;
        Ok(SegcoverStatus::Ok)
    })
}

/// # Safety
/// `s` must be a string returned by this library or null.
#[no_mangle]
pub unsafe extern "C" fn segcover_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn segcover_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

