//! Move generation and perfect play.
//!
//! Only a largest heap may be reduced, and all largest heaps are
//! interchangeable, so a move is fully described by the number of stones it
//! removes.

use std::fmt;

use serde::Serialize;

use crate::classify::{classify, outcome};
use crate::error::{NimError, Result};
use crate::game::{GameSpec, Outcome, Play, Variant};
use crate::position::Position;
use crate::predicates::{beta, nice_clause, rdiff, remainder};

/// Number of stones taken from a largest heap. Always at least one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct MoveChoice(u64);

impl MoveChoice {
    pub fn new(remove: u64) -> Result<Self> {
        if remove == 0 {
            return Err(NimError::IllegalMove { remove, largest: 0 });
        }
        Ok(MoveChoice(remove))
    }

    pub fn remove(self) -> u64 {
        self.0
    }
}

impl fmt::Display for MoveChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Number of legal moves from `s`.
pub fn legal_move_count(spec: &GameSpec, s: &Position) -> u64 {
    spec.variant.max_removal(s.largest())
}

/// Legal moves in ascending order of stones removed.
pub fn legal_moves(spec: &GameSpec, s: &Position) -> impl Iterator<Item = MoveChoice> {
    (1..=legal_move_count(spec, s)).map(MoveChoice)
}

pub fn is_legal(spec: &GameSpec, s: &Position, t: MoveChoice) -> bool {
    t.0 <= legal_move_count(spec, s)
}

/// Follower after removing `t.remove()` stones from a largest heap.
pub fn apply_move(s: &Position, t: MoveChoice) -> Result<Position> {
    s.remove_from_largest(t.0)
}

/// Every legal move that leaves the opponent in a P-position, ascending.
///
/// Scans all legal moves, so the cost grows with `min(x1, k)`.
pub fn winning_moves(spec: &GameSpec, s: &Position) -> Vec<MoveChoice> {
    legal_moves(spec, s)
        .filter(|&t| follower_outcome(spec, s, t) == Outcome::P)
        .collect()
}

/// The smallest winning move, if any.
pub fn best_move(spec: &GameSpec, s: &Position) -> Option<MoveChoice> {
    legal_moves(spec, s).find(|&t| follower_outcome(spec, s, t) == Outcome::P)
}

fn follower_outcome(spec: &GameSpec, s: &Position, t: MoveChoice) -> Outcome {
    // legal_moves never yields t > x1
    let next = s.remove_from_largest(t.0).expect("legal move");
    outcome(spec, &next)
}

/// Winning move read directly off the position's residues, without search.
///
/// Defined for misère bounded play with `k >= 2`. Returns `None` for
/// P-positions, the empty position and the greedy or `k = 1` rule sets.
/// Normal play is rejected.
pub fn constructive_move(spec: &GameSpec, s: &Position) -> Result<Option<MoveChoice>> {
    if spec.play != Play::Misere {
        return Err(NimError::Unsupported(
            "constructive moves are only defined for misère play",
        ));
    }
    let k = match spec.variant {
        Variant::Bounded(k) if k >= 2 => k,
        _ => return Ok(None),
    };
    if !s.has_stones() || outcome(spec, s) == Outcome::P {
        return Ok(None);
    }

    let (x1, x2, x3) = (s.x(1), s.x(2), s.x(3));
    let r1 = rdiff(x1, x2, k);
    let beta_even = beta(s).is_multiple_of(2);
    let t = match (x3 <= 1, beta_even) {
        (true, true) => {
            debug_assert!(nice_clause(x1, x2, k).is_none());
            match remainder(x2 as i128, k) {
                1 => r1 + 1,
                0 => remainder(r1 as i128 - 1, k),
                _ => r1,
            }
        }
        (true, false) | (false, true) => r1,
        (false, false) => {
            let low = rdiff(x2, x3, k);
            if low == 0 {
                r1 + 1
            } else if low == k {
                remainder(r1 as i128 - 1, k)
            } else {
                r1
            }
        }
    };
    debug_assert!(t >= 1 && t <= k.min(x1), "constructive move {t} out of range at {s}");
    Ok(Some(MoveChoice(t)))
}

/// Full engine view of a position.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StrategyReport {
    pub outcome: Outcome,
    pub winning: Vec<MoveChoice>,
    pub constructive: Option<MoveChoice>,
    pub chosen: Option<MoveChoice>,
}

pub fn analyze(spec: &GameSpec, s: &Position) -> StrategyReport {
    let winning = winning_moves(spec, s);
    let constructive = if spec.play == Play::Misere {
        constructive_move(spec, s).ok().flatten()
    } else {
        None
    };
    StrategyReport {
        outcome: classify(spec, s).outcome,
        chosen: winning.first().copied(),
        winning,
        constructive,
    }
}

/// A breach of one of the structural facts about stable moves.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FactViolation {
    pub position: Position,
    pub remove: u64,
    pub fact: &'static str,
}

/// Checks the stable-move facts for every legal move of `s` in misère
/// bounded play with bound `k`:
///
/// * a stable move only lowers the first heap and keeps β;
/// * an unstable move leaves a largest heap equal to the old `x2`;
/// * removing `R(x1 - x2)`, when non-zero, is stable and balances the top two heaps;
/// * a stable move out of a P-position never lands in a P-position.
pub fn stable_move_violations(k: u64, s: &Position) -> Vec<FactViolation> {
    let spec = GameSpec {
        variant: Variant::Bounded(k),
        play: Play::Misere,
    };
    let mut out = Vec::new();
    let (x1, x2) = (s.x(1), s.x(2));
    let is_p = outcome(&spec, s) == Outcome::P;
    let mut violation = |remove, fact| {
        out.push(FactViolation {
            position: s.clone(),
            remove,
            fact,
        })
    };

    for t in legal_moves(&spec, s) {
        let next = s.remove_from_largest(t.0).expect("legal move");
        if crate::predicates::is_stable_move(s, t.0) {
            let rest_kept = next.x(1) == x1 - t.0 && next.heaps()[1..] == s.heaps()[1..];
            if !rest_kept || beta(&next) != beta(s) {
                violation(t.0, "stable move changes more than the first heap");
            }
            if is_p && outcome(&spec, &next) == Outcome::P {
                violation(t.0, "stable move from a P-position reaches a P-position");
            }
        } else if next.x(1) != x2 {
            violation(t.0, "unstable move does not leave x2 on top");
        }
    }

    let r1 = rdiff(x1, x2, k);
    if r1 != 0 {
        let stable = crate::predicates::is_stable_move(s, r1);
        let balanced = s
            .remove_from_largest(r1)
            .map(|n| rdiff(n.x(1), n.x(2), k) == 0)
            .unwrap_or(false);
        if !stable || !balanced {
            violation(r1, "removing R(x1-x2) is not a balancing stable move");
        }
    }
    out
}
