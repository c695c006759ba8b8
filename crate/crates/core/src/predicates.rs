//! Residue arithmetic and the structural predicates the outcome formulas are
//! built from.

use crate::error::{NimError, Result};
use crate::position::Position;

/// Residue of `a` modulo `k + 1`, always in `0..=k` (also for negative `a`).
pub fn remainder(a: i128, k: u64) -> u64 {
    debug_assert!(k >= 1);
    a.rem_euclid(k as i128 + 1) as u64
}

/// `R(a - b)` for heap sizes.
pub(crate) fn rdiff(a: u64, b: u64, k: u64) -> u64 {
    remainder(a as i128 - b as i128, k)
}

/// How many of `x3, x4, ...` repeat the value of `x3`; zero when `x3` is empty.
pub fn beta(s: &Position) -> u64 {
    let third = s.x(3);
    if third == 0 {
        return 0;
    }
    s.heaps()[2..].iter().take_while(|&&h| h == third).count() as u64
}

/// How many heaps are tied for the maximum; zero for the empty position.
pub fn alpha(s: &Position) -> u64 {
    let first = s.largest();
    if first == 0 {
        return 0;
    }
    s.heaps().iter().take_while(|&&h| h == first).count() as u64
}

fn check_k(k: u64) -> Result<()> {
    if k < 2 {
        return Err(NimError::InvalidK { k, min: 2 });
    }
    Ok(())
}

/// Which of the three good-triple residue patterns `(x1, x2, x3)` matches.
pub(crate) fn good_clause(x1: u64, x2: u64, x3: u64, k: u64) -> Option<u8> {
    let top = rdiff(x1, x2, k);
    let low = rdiff(x2, x3, k);
    if top == k && low == 0 {
        Some(1)
    } else if top == 0 && (1..k).contains(&low) {
        Some(2)
    } else if top == 1 && low == k {
        Some(3)
    } else {
        None
    }
}

/// Which of the three nice-pair residue patterns `(x1, x2)` matches.
///
/// Also evaluated for `x2 == 0`, which decides single-heap positions.
pub(crate) fn nice_clause(x1: u64, x2: u64, k: u64) -> Option<u8> {
    let r1 = remainder(x1 as i128, k);
    let r2 = remainder(x2 as i128, k);
    if r1 == 0 && r2 == 1 {
        Some(1)
    } else if rdiff(x1, x2, k) == 0 && r2 >= 2 {
        Some(2)
    } else if r1 == 1 && r2 == 0 {
        Some(3)
    } else {
        None
    }
}

/// Whether the triple is k-good. Requires `x1 >= x2 >= x3 >= 1` and `k >= 2`.
pub fn is_k_good(x1: u64, x2: u64, x3: u64, k: u64) -> Result<bool> {
    check_k(k)?;
    if !(x1 >= x2 && x2 >= x3 && x3 >= 1) {
        return Err(NimError::InvalidArguments(vec![x1, x2, x3]));
    }
    Ok(good_clause(x1, x2, x3, k).is_some())
}

/// Whether the pair is k-nice. Requires `x1 >= x2 >= 1` and `k >= 2`.
pub fn is_k_nice(x1: u64, x2: u64, k: u64) -> Result<bool> {
    check_k(k)?;
    if !(x1 >= x2 && x2 >= 1) {
        return Err(NimError::InvalidArguments(vec![x1, x2]));
    }
    Ok(nice_clause(x1, x2, k).is_some())
}

/// A removal of `t` is stable when it cannot drop the largest heap below the second.
pub fn is_stable_move(s: &Position, t: u64) -> bool {
    s.x(1) - s.x(2) >= t
}
