//! C ABI for the greedy-nim engine.
//!
//! Positions cross the boundary as opaque [`GnimPosition`] handles created by
//! [`gnim_position_new`] and released with [`gnim_position_free`]. Every
//! fallible call returns a [`GnimStatus`]; results are written through out
//! pointers only on `GNIM_STATUS_OK`. The header `include/greedy_nim.h` is
//! regenerated by the build script.

use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use greedy_nim::classify::MatchedClause;
use greedy_nim::service::MAX_MOVE_SCAN;
use greedy_nim::strategy::legal_move_count;
use greedy_nim::{GameSpec, NimError, Outcome, Play, Position, Variant};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GnimStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidK = 2,
    IllegalMove = 3,
    BufferTooSmall = 4,
    Unsupported = 5,
    InvalidArgument = 6,
    SearchTooLarge = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GnimVariant {
    Bounded = 0,
    Greedy = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GnimPlay {
    Normal = 0,
    Misere = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GnimOutcome {
    P = 0,
    N = 1,
}

/// Rule set. `k` is read only for the bounded variant and must be positive.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct GnimSpec {
    pub variant: GnimVariant,
    pub k: u64,
    pub play: GnimPlay,
}

/// Tri-state flag: -1 when the statistic does not apply.
pub type GnimTriState = i8;

#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct GnimClassification {
    pub outcome: GnimOutcome,
    pub beta: u64,
    pub alpha: u64,
    pub has_r1: bool,
    pub r1: u64,
    pub k_good: GnimTriState,
    pub k_nice: GnimTriState,
    /// Static NUL-terminated clause code, e.g. `"x3_ge_2_beta_odd_k_good_1"` or `"none"`.
    pub clause: *const c_char,
}

/// Opaque position handle.
pub struct GnimPosition(Position);

fn status_of(e: &NimError) -> GnimStatus {
    match e {
        NimError::InvalidK { .. } => GnimStatus::InvalidK,
        NimError::IllegalMove { .. } => GnimStatus::IllegalMove,
        NimError::Unsupported(_) => GnimStatus::Unsupported,
        _ => GnimStatus::InvalidArgument,
    }
}

fn to_spec(spec: &GnimSpec) -> Result<GameSpec, GnimStatus> {
    let variant = match spec.variant {
        GnimVariant::Bounded => Variant::bounded(spec.k).map_err(|e| status_of(&e))?,
        GnimVariant::Greedy => Variant::Greedy,
    };
    let play = match spec.play {
        GnimPlay::Normal => Play::Normal,
        GnimPlay::Misere => Play::Misere,
    };
    Ok(GameSpec { variant, play })
}

fn to_outcome(o: Outcome) -> GnimOutcome {
    match o {
        Outcome::P => GnimOutcome::P,
        Outcome::N => GnimOutcome::N,
    }
}

fn tri(v: Option<bool>) -> GnimTriState {
    v.map(i8::from).unwrap_or(-1)
}

fn clause_cstr(c: &MatchedClause) -> &'static CStr {
    use MatchedClause::*;
    match c {
        EvenTotal => c"even_total",
        OddTotal => c"odd_total",
        BetaEvenBalanced => c"beta_even_r1_zero",
        BetaOddGood(1) => c"beta_odd_k_good_1",
        BetaOddGood(2) => c"beta_odd_k_good_2",
        BetaOddGood(_) => c"beta_odd_k_good_3",
        LowThirdBetaEvenNice(1) => c"x3_le_1_beta_even_k_nice_1",
        LowThirdBetaEvenNice(2) => c"x3_le_1_beta_even_k_nice_2",
        LowThirdBetaEvenNice(_) => c"x3_le_1_beta_even_k_nice_3",
        LowThirdBetaOddBalanced => c"x3_le_1_beta_odd_r1_zero",
        HighThirdBetaEvenBalanced => c"x3_ge_2_beta_even_r1_zero",
        HighThirdBetaOddGood(1) => c"x3_ge_2_beta_odd_k_good_1",
        HighThirdBetaOddGood(2) => c"x3_ge_2_beta_odd_k_good_2",
        HighThirdBetaOddGood(_) => c"x3_ge_2_beta_odd_k_good_3",
        AlphaEven => c"alpha_even",
        LowLargestAlphaOdd => c"x1_le_1_alpha_odd",
        HighLargestAlphaEven => c"x1_ge_2_alpha_even",
        None => c"none",
    }
}

/// Runs `body`, mapping panics to `GNIM_STATUS_PANIC`.
fn guard(body: impl FnOnce() -> Result<(), GnimStatus>) -> GnimStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => GnimStatus::Ok,
        Ok(Err(status)) => status,
        Err(_) => GnimStatus::Panic,
    }
}

unsafe fn position_ref<'a>(p: *const GnimPosition) -> Result<&'a Position, GnimStatus> {
    p.as_ref().map(|p| &p.0).ok_or(GnimStatus::NullPointer)
}

unsafe fn write_list(values: &[u64], buf: *mut u64, cap: usize, out_len: *mut usize) -> Result<(), GnimStatus> {
    if out_len.is_null() {
        return Err(GnimStatus::NullPointer);
    }
    *out_len = values.len();
    if values.len() > cap {
        return Err(GnimStatus::BufferTooSmall);
    }
    if !values.is_empty() {
        if buf.is_null() {
            return Err(GnimStatus::NullPointer);
        }
        ptr::copy_nonoverlapping(values.as_ptr(), buf, values.len());
    }
    Ok(())
}

/// Creates a normalized position from `len` heap sizes.
///
/// # Safety
/// `heaps` must point to `len` readable values (it may be NULL when `len` is 0)
/// and `out` must be writable. Free the result with [`gnim_position_free`].
#[no_mangle]
pub unsafe extern "C" fn gnim_position_new(heaps: *const u64, len: usize, out: *mut *mut GnimPosition) -> GnimStatus {
    guard(|| {
        if out.is_null() || (heaps.is_null() && len > 0) {
            return Err(GnimStatus::NullPointer);
        }
        let slice = if len == 0 { &[][..] } else { std::slice::from_raw_parts(heaps, len) };
        let p = Position::from_heaps(slice.iter().copied());
        *out = Box::into_raw(Box::new(GnimPosition(p)));
        Ok(())
    })
}

/// # Safety
/// `position` must be NULL or a handle from this library that was not freed yet.
#[no_mangle]
pub unsafe extern "C" fn gnim_position_free(position: *mut GnimPosition) {
    if !position.is_null() {
        drop(Box::from_raw(position));
    }
}

/// Number of stored heaps (at least 4), or 0 for NULL.
///
/// # Safety
/// `position` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn gnim_position_len(position: *const GnimPosition) -> usize {
    position_ref(position).map(Position::len).unwrap_or(0)
}

/// Copies the normalized heaps into `buf`. On `GNIM_STATUS_BUFFER_TOO_SMALL`
/// `out_len` still receives the required length.
///
/// # Safety
/// `position` must be a live handle, `buf` writable for `cap` values, `out_len` writable.
#[no_mangle]
pub unsafe extern "C" fn gnim_position_heaps(
    position: *const GnimPosition,
    buf: *mut u64,
    cap: usize,
    out_len: *mut usize,
) -> GnimStatus {
    guard(|| write_list(position_ref(position)?.heaps(), buf, cap, out_len))
}

/// Removes `remove` stones from a largest heap, producing a new handle.
///
/// # Safety
/// `position` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gnim_apply_move(
    position: *const GnimPosition,
    remove: u64,
    out: *mut *mut GnimPosition,
) -> GnimStatus {
    guard(|| {
        let p = position_ref(position)?;
        if out.is_null() {
            return Err(GnimStatus::NullPointer);
        }
        let t = greedy_nim::MoveChoice::new(remove).map_err(|e| status_of(&e))?;
        let next = greedy_nim::apply_move(p, t).map_err(|e| status_of(&e))?;
        *out = Box::into_raw(Box::new(GnimPosition(next)));
        Ok(())
    })
}

/// # Safety
/// `position` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gnim_classify(
    spec: GnimSpec,
    position: *const GnimPosition,
    out: *mut GnimClassification,
) -> GnimStatus {
    guard(|| {
        let spec = to_spec(&spec)?;
        let p = position_ref(position)?;
        let out = out.as_mut().ok_or(GnimStatus::NullPointer)?;
        let d = greedy_nim::classify(&spec, p);
        *out = GnimClassification {
            outcome: to_outcome(d.outcome),
            beta: d.beta,
            alpha: d.alpha,
            has_r1: d.r1.is_some(),
            r1: d.r1.unwrap_or(0),
            k_good: tri(d.k_good),
            k_nice: tri(d.k_nice),
            clause: clause_cstr(&d.matched_clause).as_ptr(),
        };
        Ok(())
    })
}

/// Whether normal and misère play disagree on the position. `spec.play` is ignored.
///
/// # Safety
/// `position` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gnim_is_singular(spec: GnimSpec, position: *const GnimPosition, out: *mut bool) -> GnimStatus {
    guard(|| {
        let spec = to_spec(&spec)?;
        let p = position_ref(position)?;
        let out = out.as_mut().ok_or(GnimStatus::NullPointer)?;
        *out = greedy_nim::is_singular(spec.variant, p);
        Ok(())
    })
}

fn check_scan(spec: &GameSpec, p: &Position) -> Result<(), GnimStatus> {
    if legal_move_count(spec, p) > MAX_MOVE_SCAN {
        return Err(GnimStatus::SearchTooLarge);
    }
    Ok(())
}

/// Writes all winning removal counts in ascending order.
///
/// # Safety
/// `position` must be a live handle, `buf` writable for `cap` values, `out_len` writable.
#[no_mangle]
pub unsafe extern "C" fn gnim_winning_moves(
    spec: GnimSpec,
    position: *const GnimPosition,
    buf: *mut u64,
    cap: usize,
    out_len: *mut usize,
) -> GnimStatus {
    guard(|| {
        let spec = to_spec(&spec)?;
        let p = position_ref(position)?;
        check_scan(&spec, p)?;
        let moves: Vec<u64> = greedy_nim::winning_moves(&spec, p).iter().map(|t| t.remove()).collect();
        write_list(&moves, buf, cap, out_len)
    })
}

/// Smallest winning removal, or 0 when the position has none.
///
/// # Safety
/// `position` must be a live handle and `out_remove` writable.
#[no_mangle]
pub unsafe extern "C" fn gnim_best_move(spec: GnimSpec, position: *const GnimPosition, out_remove: *mut u64) -> GnimStatus {
    guard(|| {
        let spec = to_spec(&spec)?;
        let p = position_ref(position)?;
        let out = out_remove.as_mut().ok_or(GnimStatus::NullPointer)?;
        check_scan(&spec, p)?;
        *out = greedy_nim::best_move(&spec, p).map(|t| t.remove()).unwrap_or(0);
        Ok(())
    })
}

/// Search-free winning removal for misère bounded play, or 0 when none
/// applies. Normal play yields `GNIM_STATUS_UNSUPPORTED`.
///
/// # Safety
/// `position` must be a live handle and `out_remove` writable.
#[no_mangle]
pub unsafe extern "C" fn gnim_constructive_move(
    spec: GnimSpec,
    position: *const GnimPosition,
    out_remove: *mut u64,
) -> GnimStatus {
    guard(|| {
        let spec = to_spec(&spec)?;
        let p = position_ref(position)?;
        let out = out_remove.as_mut().ok_or(GnimStatus::NullPointer)?;
        let t = greedy_nim::constructive_move(&spec, p).map_err(|e| status_of(&e))?;
        *out = t.map(|t| t.remove()).unwrap_or(0);
        Ok(())
    })
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn gnim_status_message(status: GnimStatus) -> *const c_char {
    let msg: &'static CStr = match status {
        GnimStatus::Ok => c"ok",
        GnimStatus::NullPointer => c"null pointer argument",
        GnimStatus::InvalidK => c"k must be a positive integer",
        GnimStatus::IllegalMove => c"illegal move",
        GnimStatus::BufferTooSmall => c"output buffer too small",
        GnimStatus::Unsupported => c"operation not supported for this rule set",
        GnimStatus::InvalidArgument => c"invalid argument",
        GnimStatus::SearchTooLarge => c"too many legal moves to search",
        GnimStatus::Panic => c"internal error",
    };
    msg.as_ptr()
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn gnim_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
