//! C interface to `clobber-core`.
//!
//! Boards and plans are opaque handles created by `*_parse`, `*_new` or the
//! reduction functions and released with the matching `*_free`. Every
//! fallible call returns a [`ClobberStatus`]; the message of the most recent
//! failure on the calling thread is available from [`clobber_last_error`].
//! Strings returned by the library are released with [`clobber_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::ptr;

use clobber_core::linear::reduce_line;
use clobber_core::rect::{reduce_rect, RectError};
use clobber_core::text::{format_board, format_plan, parse_board, parse_plan};
use clobber_core::{
    checkerboard, replay, Color, Configuration, Mode, Plan, ReplayError, Solver, SolverConfig,
    SolverError, Validation,
};

pub struct ClobberBoard(Configuration);

pub struct ClobberPlan(Plan);

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClobberStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidArgument = 4,
    IllegalMove = 5,
    NotAlternating = 6,
    LimitExceeded = 7,
    Internal = 8,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClobberColor {
    White = 0,
    Black = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClobberMode {
    WhiteFirst = 0,
    BlackFirst = 1,
    Either = 2,
    Free = 3,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn fail(status: ClobberStatus, msg: impl ToString) -> ClobberStatus {
    let text = CString::new(msg.to_string().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = text);
    status
}

unsafe fn read_str<'a>(text: *const c_char) -> Result<&'a str, ClobberStatus> {
    if text.is_null() {
        return Err(fail(ClobberStatus::NullPointer, "null string"));
    }
    CStr::from_ptr(text)
        .to_str()
        .map_err(|e| fail(ClobberStatus::InvalidUtf8, e))
}

fn to_c_string(s: String) -> *mut c_char {
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

unsafe fn store<T>(out: *mut *mut T, value: T) -> ClobberStatus {
    *out = Box::into_raw(Box::new(value));
    ClobberStatus::Ok
}

fn rect_status(e: RectError) -> ClobberStatus {
    match e {
        RectError::Board(_) => fail(ClobberStatus::InvalidArgument, e),
        _ => fail(ClobberStatus::Internal, e),
    }
}

/// Message of the last failure on this thread. Owned by the library and
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn clobber_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn clobber_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `text` must be a valid C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn clobber_board_parse(
    text: *const c_char,
    out: *mut *mut ClobberBoard,
) -> ClobberStatus {
    if out.is_null() {
        return fail(ClobberStatus::NullPointer, "null output pointer");
    }
    let text = match read_str(text) {
        Ok(t) => t,
        Err(s) => return s,
    };
    match parse_board(text) {
        Ok(cfg) => store(out, ClobberBoard(cfg)),
        Err(e) => fail(ClobberStatus::ParseError, e),
    }
}

/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn clobber_board_checkerboard(
    rows: i64,
    cols: i64,
    out: *mut *mut ClobberBoard,
) -> ClobberStatus {
    if out.is_null() {
        return fail(ClobberStatus::NullPointer, "null output pointer");
    }
    match checkerboard(rows, cols) {
        Ok(cfg) => store(out, ClobberBoard(cfg)),
        Err(e) => fail(ClobberStatus::InvalidArgument, e),
    }
}

/// # Safety
/// `board` must be null or a handle from this library, freed at most once.
#[no_mangle]
pub unsafe extern "C" fn clobber_board_free(board: *mut ClobberBoard) {
    if !board.is_null() {
        drop(Box::from_raw(board));
    }
}

/// Stone count, or 0 for a null handle.
///
/// # Safety
/// `board` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn clobber_board_stones(board: *const ClobberBoard) -> usize {
    board.as_ref().map_or(0, |b| b.0.len())
}

/// # Safety
/// `board` must be a live handle and `delta` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn clobber_board_delta(
    board: *const ClobberBoard,
    delta: *mut usize,
) -> ClobberStatus {
    match (board.as_ref(), delta.is_null()) {
        (Some(b), false) => {
            *delta = b.0.delta();
            ClobberStatus::Ok
        }
        _ => fail(ClobberStatus::NullPointer, "null argument"),
    }
}

/// Board in file format; null for a null handle.
///
/// # Safety
/// `board` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn clobber_board_format(board: *const ClobberBoard) -> *mut c_char {
    board
        .as_ref()
        .map_or(ptr::null_mut(), |b| to_c_string(format_board(&b.0)))
}

/// # Safety
/// `text` must be a valid C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn clobber_plan_parse(
    text: *const c_char,
    out: *mut *mut ClobberPlan,
) -> ClobberStatus {
    if out.is_null() {
        return fail(ClobberStatus::NullPointer, "null output pointer");
    }
    let text = match read_str(text) {
        Ok(t) => t,
        Err(s) => return s,
    };
    match parse_plan(text) {
        Ok(p) => store(out, ClobberPlan(p)),
        Err(e) => fail(ClobberStatus::ParseError, e),
    }
}

/// # Safety
/// `plan` must be null or a handle from this library, freed at most once.
#[no_mangle]
pub unsafe extern "C" fn clobber_plan_free(plan: *mut ClobberPlan) {
    if !plan.is_null() {
        drop(Box::from_raw(plan));
    }
}

/// # Safety
/// `plan` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn clobber_plan_len(plan: *const ClobberPlan) -> usize {
    plan.as_ref().map_or(0, |p| p.0.len())
}

/// # Safety
/// `plan` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn clobber_plan_format(plan: *const ClobberPlan) -> *mut c_char {
    plan.as_ref()
        .map_or(ptr::null_mut(), |p| to_c_string(format_plan(&p.0)))
}

/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn clobber_reduce_line(
    n: i64,
    first: ClobberColor,
    out: *mut *mut ClobberPlan,
) -> ClobberStatus {
    if out.is_null() {
        return fail(ClobberStatus::NullPointer, "null output pointer");
    }
    let first = match first {
        ClobberColor::White => Color::White,
        ClobberColor::Black => Color::Black,
    };
    match reduce_line(n, first) {
        Ok(p) => store(out, ClobberPlan(p)),
        Err(e) => fail(ClobberStatus::InvalidArgument, e),
    }
}

/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn clobber_reduce_rect(
    n: i64,
    m: i64,
    out: *mut *mut ClobberPlan,
) -> ClobberStatus {
    if out.is_null() {
        return fail(ClobberStatus::NullPointer, "null output pointer");
    }
    match reduce_rect(n, m) {
        Ok(p) => store(out, ClobberPlan(p)),
        Err(e) => rect_status(e),
    }
}

/// Replays `plan` on `board`, writing the number of stones left.
///
/// # Safety
/// `board` and `plan` must be live handles and `final_stones` a valid
/// pointer.
#[no_mangle]
pub unsafe extern "C" fn clobber_replay(
    board: *const ClobberBoard,
    plan: *const ClobberPlan,
    alternating: bool,
    final_stones: *mut usize,
) -> ClobberStatus {
    let (Some(b), Some(p), false) = (board.as_ref(), plan.as_ref(), final_stones.is_null()) else {
        return fail(ClobberStatus::NullPointer, "null argument");
    };
    let validation = if alternating {
        Validation::Alternating
    } else {
        Validation::LegalOnly
    };
    match replay(&b.0, &p.0, validation) {
        Ok((end, _)) => {
            *final_stones = end.len();
            ClobberStatus::Ok
        }
        Err(e @ ReplayError::IllegalMove { .. }) => fail(ClobberStatus::IllegalMove, e),
        Err(e @ ReplayError::NotAlternating { .. }) => fail(ClobberStatus::NotAlternating, e),
    }
}

/// Exact minimum stone count. `limit` 0 selects the default limit; `jobs` 0
/// means one worker.
///
/// # Safety
/// `board` must be a live handle and `min_stones` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn clobber_min_stones(
    board: *const ClobberBoard,
    mode: ClobberMode,
    limit: usize,
    jobs: usize,
    min_stones: *mut usize,
) -> ClobberStatus {
    let (Some(b), false) = (board.as_ref(), min_stones.is_null()) else {
        return fail(ClobberStatus::NullPointer, "null argument");
    };
    let mut config = SolverConfig::default();
    if limit > 0 {
        config.limit = limit;
    }
    config.jobs = jobs.max(1);
    let mode = match mode {
        ClobberMode::WhiteFirst => Mode::AlternatingWhiteFirst,
        ClobberMode::BlackFirst => Mode::AlternatingBlackFirst,
        ClobberMode::Either => Mode::AlternatingEither,
        ClobberMode::Free => Mode::FreeOrder,
    };
    match Solver::new(config).min_stones(&b.0, mode) {
        Ok(sol) => {
            *min_stones = sol.min_stones;
            ClobberStatus::Ok
        }
        Err(e @ SolverError::LimitExceeded { .. }) => fail(ClobberStatus::LimitExceeded, e),
        Err(e @ SolverError::EmptyConfiguration) => fail(ClobberStatus::InvalidArgument, e),
    }
}
