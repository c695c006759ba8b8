//! Brute-force ground truth.
//!
//! Outcomes and Grundy values are computed by exhaustive game-tree search
//! with memoization. Nothing here consults the closed-form classifier; the
//! follower relation is re-derived from the rules by sorting.

use dashmap::DashMap;

use crate::error::{NimError, Result};
use crate::game::{GameSpec, Outcome, Play, Variant};
use crate::position::Position;

/// Non-increasing heap sizes with empty heaps dropped.
pub type Key = Vec<u64>;

pub fn canonical_key(heaps: &[u64]) -> Key {
    let mut key: Key = heaps.iter().copied().filter(|&h| h > 0).collect();
    key.sort_unstable_by(|a, b| b.cmp(a));
    key
}

/// Positions reachable in one move, one per legal removal count.
pub fn followers(variant: Variant, key: &[u64]) -> Vec<Key> {
    let Some(&largest) = key.first() else {
        return Vec::new();
    };
    let max = match variant {
        Variant::Bounded(k) => largest.min(k),
        Variant::Greedy => largest,
    };
    (1..=max)
        .map(|t| {
            let mut next = key.to_vec();
            next[0] -= t;
            canonical_key(&next)
        })
        .collect()
}

/// Insert-once memo shared by concurrent searches.
///
/// Outcomes are keyed by the full rule set, Grundy values by the variant
/// only (they are a normal-play notion).
#[derive(Debug, Default)]
pub struct MemoTable {
    outcomes: DashMap<(GameSpec, Key), Outcome>,
    grundy: DashMap<(Variant, Key), u64>,
}

impl MemoTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn outcome(&self, spec: &GameSpec, key: &[u64]) -> Option<Outcome> {
        self.outcomes.get(&(*spec, key.to_vec())).map(|e| *e)
    }

    pub fn grundy_value(&self, variant: Variant, key: &[u64]) -> Option<u64> {
        self.grundy.get(&(variant, key.to_vec())).map(|e| *e)
    }

    pub fn outcome_entries(&self) -> usize {
        self.outcomes.len()
    }

    pub fn grundy_entries(&self) -> usize {
        self.grundy.len()
    }

    fn record_outcome(&self, spec: &GameSpec, key: Key, value: Outcome) {
        let stored = *self.outcomes.entry((*spec, key)).or_insert(value);
        debug_assert_eq!(stored, value);
    }

    fn record_grundy(&self, variant: Variant, key: Key, value: u64) {
        let stored = *self.grundy.entry((variant, key)).or_insert(value);
        debug_assert_eq!(stored, value);
    }
}

/// Outcome by exhaustive search: the empty position is won by the player to
/// move in misère play and lost in normal play; any other position is N iff
/// some follower is P.
pub fn oracle_outcome(spec: &GameSpec, s: &Position, memo: &MemoTable) -> Outcome {
    let root = canonical_key(s.heaps());
    if let Some(known) = memo.outcome(spec, &root) {
        return known;
    }

    // Explicit stack: depth is bounded by the total stone count.
    let mut stack = vec![root.clone()];
    while let Some(top) = stack.last().cloned() {
        if memo.outcome(spec, &top).is_some() {
            stack.pop();
            continue;
        }
        if top.is_empty() {
            let terminal = match spec.play {
                Play::Normal => Outcome::P,
                Play::Misere => Outcome::N,
            };
            memo.record_outcome(spec, top, terminal);
            stack.pop();
            continue;
        }

        let mut pending = Vec::new();
        let mut reaches_p = false;
        for next in followers(spec.variant, &top) {
            match memo.outcome(spec, &next) {
                Some(Outcome::P) => {
                    reaches_p = true;
                    break;
                }
                Some(Outcome::N) => {}
                None => pending.push(next),
            }
        }
        if reaches_p {
            memo.record_outcome(spec, top, Outcome::N);
            stack.pop();
        } else if pending.is_empty() {
            memo.record_outcome(spec, top, Outcome::P);
            stack.pop();
        } else {
            stack.extend(pending);
        }
    }
    memo.outcome(spec, &root).expect("root resolved")
}

/// Minimum excluded value of `values`.
pub fn mex<I: IntoIterator<Item = u64>>(values: I) -> u64 {
    let mut seen: Vec<u64> = values.into_iter().collect();
    seen.sort_unstable();
    seen.dedup();
    seen.iter()
        .enumerate()
        .find(|(i, &v)| *i as u64 != v)
        .map(|(i, _)| i as u64)
        .unwrap_or(seen.len() as u64)
}

/// Sprague-Grundy value under normal play. Misère play is rejected.
pub fn grundy(spec: &GameSpec, s: &Position, memo: &MemoTable) -> Result<u64> {
    if spec.play != Play::Normal {
        return Err(NimError::Unsupported(
            "Grundy values are only defined for normal play",
        ));
    }
    let variant = spec.variant;
    let root = canonical_key(s.heaps());
    if let Some(known) = memo.grundy_value(variant, &root) {
        return Ok(known);
    }

    let mut stack = vec![root.clone()];
    while let Some(top) = stack.last().cloned() {
        if memo.grundy_value(variant, &top).is_some() {
            stack.pop();
            continue;
        }
        let next = followers(variant, &top);
        let pending: Vec<Key> = next
            .iter()
            .filter(|f| memo.grundy_value(variant, f).is_none())
            .cloned()
            .collect();
        if pending.is_empty() {
            let value = mex(next.iter().map(|f| memo.grundy_value(variant, f).unwrap()));
            memo.record_grundy(variant, top, value);
            stack.pop();
        } else {
            stack.extend(pending);
        }
    }
    Ok(memo.grundy_value(variant, &root).expect("root resolved"))
}

/// Every position with at most `max_heaps` non-empty heaps of at most
/// `max_heap_size` stones, each exactly once, in lexicographic order of the
/// heap sequence read from the smallest slot.
pub fn enumerate_positions(max_heaps: usize, max_heap_size: u64) -> PositionIter {
    PositionIter {
        current: Some(vec![0; max_heaps]),
        max: max_heap_size,
    }
}

/// Iterator returned by [`enumerate_positions`].
#[derive(Debug, Clone)]
pub struct PositionIter {
    current: Option<Vec<u64>>,
    max: u64,
}

impl Iterator for PositionIter {
    type Item = Position;

    fn next(&mut self) -> Option<Position> {
        let seq = self.current.as_mut()?;
        let out = Position::from_heaps(seq.iter().copied());
        // Bump the rightmost slot that can grow without breaking the
        // non-increasing order, then reset everything after it.
        let bump = (0..seq.len())
            .rev()
            .find(|&i| seq[i] < self.max && (i == 0 || seq[i] < seq[i - 1]));
        match bump {
            Some(i) => {
                seq[i] += 1;
                seq[i + 1..].iter_mut().for_each(|v| *v = 0);
            }
            None => self.current = None,
        }
        Some(out)
    }
}

/// `C(max_heap_size + max_heaps, max_heaps)`, the size of the enumeration.
pub fn position_count(max_heaps: usize, max_heap_size: u64) -> u128 {
    let n = max_heap_size as u128 + max_heaps as u128;
    let r = max_heaps as u128;
    (0..r).fold(1u128, |acc, i| acc * (n - i) / (i + 1))
}
