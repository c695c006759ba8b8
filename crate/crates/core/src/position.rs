//! Heap configurations.
//!
//! A [`Position`] is a multiset of heap sizes stored as a non-increasing
//! sequence of at least [`MIN_HEAPS`] entries. Empty heaps are kept as zeros
//! so that the first three or four entries are always addressable.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{NimError, Result};

/// Positions are padded with empty heaps up to this length.
pub const MIN_HEAPS: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Position {
    heaps: Vec<u64>,
}

impl Position {
    /// The position with no stones.
    pub fn empty() -> Self {
        Position {
            heaps: vec![0; MIN_HEAPS],
        }
    }

    /// Sorts `heaps` into non-increasing order and pads with empty heaps.
    pub fn from_heaps<I: IntoIterator<Item = u64>>(heaps: I) -> Self {
        let mut heaps: Vec<u64> = heaps.into_iter().collect();
        heaps.sort_unstable_by(|a, b| b.cmp(a));
        if heaps.len() < MIN_HEAPS {
            heaps.resize(MIN_HEAPS, 0);
        }
        Position { heaps }
    }

    /// Builds a position from raw, possibly negative input.
    pub fn normalize(raw: &[i128]) -> Result<Self> {
        let heaps = raw
            .iter()
            .enumerate()
            .map(|(index, &value)| {
                if value < 0 {
                    Err(NimError::NegativeHeap { index, value })
                } else {
                    u64::try_from(value).map_err(|_| NimError::HeapTooLarge { index, value })
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_heaps(heaps))
    }

    pub fn heaps(&self) -> &[u64] {
        &self.heaps
    }

    pub fn len(&self) -> usize {
        self.heaps.len()
    }

    /// Always false: positions carry at least [`MIN_HEAPS`] entries.
    pub fn is_empty(&self) -> bool {
        self.heaps.is_empty()
    }

    /// 1-based heap access, zero beyond the stored length.
    pub fn x(&self, index: usize) -> u64 {
        debug_assert!(index >= 1);
        self.heaps.get(index - 1).copied().unwrap_or(0)
    }

    pub fn largest(&self) -> u64 {
        self.heaps[0]
    }

    /// Total stones; saturates at `u128::MAX` which is unreachable for `u64` heaps.
    pub fn total(&self) -> u128 {
        self.heaps.iter().map(|&h| h as u128).sum()
    }

    pub fn has_stones(&self) -> bool {
        self.heaps[0] > 0
    }

    pub fn nonzero_count(&self) -> usize {
        self.heaps.iter().take_while(|&&h| h > 0).count()
    }

    /// Heaps with trailing zeros removed.
    pub fn canonical(&self) -> &[u64] {
        &self.heaps[..self.nonzero_count()]
    }

    /// Takes `remove` stones from a largest heap, keeping the heap order.
    pub(crate) fn remove_from_largest(&self, remove: u64) -> Result<Position> {
        let largest = self.largest();
        if remove == 0 || remove > largest {
            return Err(NimError::IllegalMove { remove, largest });
        }
        let value = largest - remove;
        let mut heaps = self.heaps.clone();
        // Shift the run of larger heaps left and drop `value` into the gap.
        let slot = heaps[1..].iter().take_while(|&&h| h > value).count();
        heaps.copy_within(1..=slot, 0);
        heaps[slot] = value;
        Ok(Position { heaps })
    }
}

impl Default for Position {
    fn default() -> Self {
        Self::empty()
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, h) in self.heaps.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{h}")?;
        }
        f.write_str(")")
    }
}

impl Serialize for Position {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.heaps.serialize(serializer)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn sorts_and_pads() {
        assert_eq!(Position::normalize(&[1, 3, 2]).unwrap().heaps(), &[3, 2, 1, 0]);
        assert_eq!(Position::normalize(&[]).unwrap().heaps(), &[0, 0, 0, 0]);
        assert_eq!(
            Position::normalize(&[5, 5, 5, 5, 5]).unwrap().heaps(),
            &[5, 5, 5, 5, 5]
        );
    }

    #[test]
    fn rejects_negative_heaps() {
        assert_eq!(
            Position::normalize(&[3, -1]),
            Err(NimError::NegativeHeap { index: 1, value: -1 })
        );
        assert!(matches!(
            Position::normalize(&[u64::MAX as i128 + 1]),
            Err(NimError::HeapTooLarge { index: 0, .. })
        ));
    }

    #[test]
    fn one_based_access() {
        let p = Position::from_heaps([4, 3, 1]);
        assert_eq!((p.x(1), p.x(2), p.x(3), p.x(4), p.x(9)), (4, 3, 1, 0, 0));
        assert_eq!(p.total(), 8);
        assert_eq!(p.canonical(), &[4, 3, 1]);
    }

    #[test]
    fn remove_keeps_order() {
        let p = Position::from_heaps([4, 3, 1]);
        assert_eq!(p.remove_from_largest(2).unwrap().heaps(), &[3, 2, 1, 0]);
        assert_eq!(p.remove_from_largest(4).unwrap().heaps(), &[3, 1, 0, 0]);
        assert!(p.remove_from_largest(0).is_err());
        assert!(p.remove_from_largest(5).is_err());
    }

    proptest! {
        #[test]
        fn normalize_invariants(raw in prop::collection::vec(0i128..50, 0..9)) {
            let p = Position::normalize(&raw).unwrap();
            prop_assert!(p.len() >= MIN_HEAPS);
            prop_assert!(p.heaps().windows(2).all(|w| w[0] >= w[1]));
            let mut a: Vec<u64> = raw.iter().filter(|&&v| v > 0).map(|&v| v as u64).collect();
            let mut b: Vec<u64> = p.canonical().to_vec();
            a.sort_unstable();
            b.sort_unstable();
            prop_assert_eq!(a, b);
            let signed: Vec<i128> = p.heaps().iter().map(|&h| h as i128).collect();
            prop_assert_eq!(Position::normalize(&signed).unwrap(), p);
        }

        #[test]
        fn removal_matches_resort(raw in prop::collection::vec(0u64..30, 1..8), pick in 1u64..30) {
            let p = Position::from_heaps(raw);
            prop_assume!(p.largest() > 0);
            let t = 1 + pick % p.largest();
            let mut expected = p.heaps().to_vec();
            expected[0] -= t;
            prop_assert_eq!(p.remove_from_largest(t).unwrap(), Position::from_heaps(expected));
        }
    }
}
