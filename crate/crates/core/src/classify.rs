//! Closed-form outcome classification.
//!
//! Every rule set has a characterization of its P-positions in terms of a
//! handful of heap statistics, so classification runs in time linear in the
//! number of heaps and independent of the stone counts.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::game::{GameSpec, Outcome, Play, Variant};
use crate::position::Position;
use crate::predicates::{alpha, beta, good_clause, nice_clause, rdiff};

/// The P-position condition that held, or `None` for N-positions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MatchedClause {
    /// k = 1, normal play: total stone count even.
    EvenTotal,
    /// k = 1, misère play: total stone count odd.
    OddTotal,
    /// Bounded normal play: β even and R(x1 - x2) = 0.
    BetaEvenBalanced,
    /// Bounded normal play: β odd and (x1, x2, x3) k-good by the given clause.
    BetaOddGood(u8),
    /// Bounded misère, x3 <= 1: β even and (x1, x2) k-nice by the given clause.
    LowThirdBetaEvenNice(u8),
    /// Bounded misère, x3 <= 1: β odd and R(x1 - x2) = 0.
    LowThirdBetaOddBalanced,
    /// Bounded misère, x3 >= 2: β even and R(x1 - x2) = 0.
    HighThirdBetaEvenBalanced,
    /// Bounded misère, x3 >= 2: β odd and (x1, x2, x3) k-good by the given clause.
    HighThirdBetaOddGood(u8),
    /// Greedy normal play: α even.
    AlphaEven,
    /// Greedy misère play: x1 <= 1 and α odd.
    LowLargestAlphaOdd,
    /// Greedy misère play: x1 >= 2 and α even.
    HighLargestAlphaEven,
    None,
}

impl MatchedClause {
    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        use MatchedClause::*;
        match self {
            EvenTotal => "even_total",
            OddTotal => "odd_total",
            BetaEvenBalanced => "beta_even_r1_zero",
            BetaOddGood(1) => "beta_odd_k_good_1",
            BetaOddGood(2) => "beta_odd_k_good_2",
            BetaOddGood(_) => "beta_odd_k_good_3",
            LowThirdBetaEvenNice(1) => "x3_le_1_beta_even_k_nice_1",
            LowThirdBetaEvenNice(2) => "x3_le_1_beta_even_k_nice_2",
            LowThirdBetaEvenNice(_) => "x3_le_1_beta_even_k_nice_3",
            LowThirdBetaOddBalanced => "x3_le_1_beta_odd_r1_zero",
            HighThirdBetaEvenBalanced => "x3_ge_2_beta_even_r1_zero",
            HighThirdBetaOddGood(1) => "x3_ge_2_beta_odd_k_good_1",
            HighThirdBetaOddGood(2) => "x3_ge_2_beta_odd_k_good_2",
            HighThirdBetaOddGood(_) => "x3_ge_2_beta_odd_k_good_3",
            AlphaEven => "alpha_even",
            LowLargestAlphaOdd => "x1_le_1_alpha_odd",
            HighLargestAlphaEven => "x1_ge_2_alpha_even",
            None => "none",
        }
    }

    pub fn is_none(&self) -> bool {
        *self == MatchedClause::None
    }
}

impl fmt::Display for MatchedClause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatchedClause::EvenTotal => f.write_str("total stones even"),
            MatchedClause::OddTotal => f.write_str("total stones odd"),
            MatchedClause::BetaEvenBalanced => f.write_str("β even, R(x1-x2)=0"),
            MatchedClause::BetaOddGood(c) => write!(f, "β odd, (x1,x2,x3) k-good ({c})"),
            MatchedClause::LowThirdBetaEvenNice(c) => write!(f, "x3≤1, β even, (x1,x2) k-nice ({c})"),
            MatchedClause::LowThirdBetaOddBalanced => f.write_str("x3≤1, β odd, R(x1-x2)=0"),
            MatchedClause::HighThirdBetaEvenBalanced => f.write_str("x3≥2, β even, R(x1-x2)=0"),
            MatchedClause::HighThirdBetaOddGood(c) => write!(f, "x3≥2, β odd, (x1,x2,x3) k-good ({c})"),
            MatchedClause::AlphaEven => f.write_str("α even"),
            MatchedClause::LowLargestAlphaOdd => f.write_str("x1≤1, α odd"),
            MatchedClause::HighLargestAlphaEven => f.write_str("x1≥2, α even"),
            MatchedClause::None => f.write_str("none"),
        }
    }
}

impl Serialize for MatchedClause {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.code())
    }
}

/// Outcome plus the statistics that decided it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ClassificationDetail {
    #[serde(skip)]
    pub outcome: Outcome,
    pub beta: u64,
    pub alpha: u64,
    /// R(x1 - x2); bounded variants only.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r1: Option<u64>,
    /// Present when k >= 2 and x3 >= 1.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k_good: Option<bool>,
    /// Present in misère play with k >= 2 on a non-empty position.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k_nice: Option<bool>,
    pub matched_clause: MatchedClause,
}

pub fn classify(spec: &GameSpec, s: &Position) -> ClassificationDetail {
    let beta = beta(s);
    let alpha = alpha(s);
    let mut detail = ClassificationDetail {
        outcome: Outcome::N,
        beta,
        alpha,
        r1: None,
        k_good: None,
        k_nice: None,
        matched_clause: MatchedClause::None,
    };

    let clause = match spec.variant {
        Variant::Bounded(k) => {
            let (x1, x2, x3) = (s.x(1), s.x(2), s.x(3));
            let r1 = rdiff(x1, x2, k);
            detail.r1 = Some(r1);
            if k == 1 {
                let odd = s.total() % 2 == 1;
                match (spec.play, odd) {
                    (Play::Normal, false) => MatchedClause::EvenTotal,
                    (Play::Misere, true) => MatchedClause::OddTotal,
                    _ => MatchedClause::None,
                }
            } else {
                let good = (x3 >= 1).then(|| good_clause(x1, x2, x3, k));
                detail.k_good = good.map(|g| g.is_some());
                let beta_even = beta.is_multiple_of(2);
                match spec.play {
                    Play::Normal => match (beta_even, good.flatten()) {
                        (true, _) if r1 == 0 => MatchedClause::BetaEvenBalanced,
                        (false, Some(c)) => MatchedClause::BetaOddGood(c),
                        _ => MatchedClause::None,
                    },
                    Play::Misere => {
                        if !s.has_stones() {
                            // no stones: the mover has already won
                            MatchedClause::None
                        } else {
                            let nice = nice_clause(x1, x2, k);
                            detail.k_nice = Some(nice.is_some());
                            match (x3 <= 1, beta_even) {
                                (true, true) => nice
                                    .map(MatchedClause::LowThirdBetaEvenNice)
                                    .unwrap_or(MatchedClause::None),
                                (true, false) if r1 == 0 => MatchedClause::LowThirdBetaOddBalanced,
                                (false, true) if r1 == 0 => MatchedClause::HighThirdBetaEvenBalanced,
                                (false, false) => good
                                    .flatten()
                                    .map(MatchedClause::HighThirdBetaOddGood)
                                    .unwrap_or(MatchedClause::None),
                                _ => MatchedClause::None,
                            }
                        }
                    }
                }
            }
        }
        Variant::Greedy => {
            let alpha_even = alpha.is_multiple_of(2);
            match spec.play {
                Play::Normal if alpha_even => MatchedClause::AlphaEven,
                Play::Normal => MatchedClause::None,
                Play::Misere => match (s.largest() <= 1, alpha_even) {
                    (true, false) => MatchedClause::LowLargestAlphaOdd,
                    (false, true) => MatchedClause::HighLargestAlphaEven,
                    _ => MatchedClause::None,
                },
            }
        }
    };

    detail.outcome = if clause.is_none() { Outcome::N } else { Outcome::P };
    detail.matched_clause = clause;
    detail
}

/// Shorthand for `classify(spec, s).outcome`.
pub fn outcome(spec: &GameSpec, s: &Position) -> Outcome {
    classify(spec, s).outcome
}

/// True when normal and misère play disagree on `s`.
pub fn is_singular(variant: Variant, s: &Position) -> bool {
    let normal = GameSpec { variant, play: Play::Normal };
    let misere = GameSpec { variant, play: Play::Misere };
    outcome(&normal, s) != outcome(&misere, s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pos(h: &[u64]) -> Position {
        Position::from_heaps(h.iter().copied())
    }

    fn bounded(k: u64, play: Play) -> GameSpec {
        GameSpec::bounded(k, play).unwrap()
    }

    #[test]
    fn misere_bounded_vectors() {
        let spec = bounded(2, Play::Misere);
        assert_eq!(outcome(&spec, &pos(&[1])), Outcome::P);
        assert_eq!(outcome(&spec, &pos(&[])), Outcome::N);
        assert_eq!(outcome(&spec, &pos(&[2, 2])), Outcome::P);
        let d = classify(&spec, &pos(&[4, 2, 2]));
        assert_eq!(d.outcome, Outcome::P);
        assert_eq!(d.matched_clause, MatchedClause::HighThirdBetaOddGood(1));
        assert_eq!((d.beta, d.r1, d.k_good), (1, Some(2), Some(true)));
    }

    #[test]
    fn single_heap_misere_is_residue_one() {
        let spec = bounded(2, Play::Misere);
        for x in 0..12u64 {
            let expected = if x % 3 == 1 { Outcome::P } else { Outcome::N };
            assert_eq!(outcome(&spec, &pos(&[x])), expected, "heap {x}");
        }
    }

    #[test]
    fn parity_for_k_one() {
        let d = classify(&bounded(1, Play::Misere), &pos(&[2, 1]));
        assert_eq!((d.outcome, d.matched_clause), (Outcome::P, MatchedClause::OddTotal));
        assert_eq!(outcome(&bounded(1, Play::Normal), &pos(&[2, 1])), Outcome::N);
        assert_eq!(d.k_good, None);
        assert_eq!(d.k_nice, None);
    }

    #[test]
    fn normal_bounded_vector() {
        let d = classify(&bounded(2, Play::Normal), &pos(&[3, 3, 2, 2]));
        assert_eq!((d.outcome, d.beta), (Outcome::P, 2));
        assert_eq!(d.matched_clause, MatchedClause::BetaEvenBalanced);
    }

    #[test]
    fn greedy_vectors() {
        let mis = GameSpec::greedy(Play::Misere);
        let nor = GameSpec::greedy(Play::Normal);
        assert_eq!(classify(&mis, &pos(&[1, 1, 1])).matched_clause, MatchedClause::LowLargestAlphaOdd);
        assert_eq!(outcome(&mis, &pos(&[3, 2])), Outcome::N);
        assert_eq!(outcome(&nor, &pos(&[])), Outcome::P);
        assert_eq!(classify(&nor, &pos(&[])).r1, None);
    }

    #[test]
    fn singular_examples() {
        assert!(is_singular(Variant::Greedy, &pos(&[1, 1])));
        assert!(!is_singular(Variant::Greedy, &pos(&[5, 5])));
        assert!(is_singular(Variant::Bounded(2), &pos(&[1])));
    }

    #[test]
    fn base_cases_every_spec() {
        let specs = [
            bounded(1, Play::Normal),
            bounded(2, Play::Normal),
            bounded(7, Play::Normal),
            GameSpec::greedy(Play::Normal),
        ];
        for normal in specs {
            let misere = GameSpec { play: Play::Misere, ..normal };
            assert_eq!(outcome(&normal, &pos(&[])), Outcome::P);
            assert_eq!(outcome(&misere, &pos(&[])), Outcome::N);
            assert_eq!(outcome(&normal, &pos(&[1])), Outcome::N);
            assert_eq!(outcome(&misere, &pos(&[1])), Outcome::P);
        }
    }

    #[test]
    fn n_iff_no_clause() {
        let spec = bounded(3, Play::Misere);
        for h in [[7u64, 5, 3, 3], [4, 4, 1, 0], [9, 2, 2, 2]] {
            let d = classify(&spec, &pos(&h));
            assert_eq!(d.outcome == Outcome::N, d.matched_clause.is_none());
        }
    }

    #[test]
    fn huge_heaps_do_not_overflow() {
        let spec = bounded(u64::MAX - 1, Play::Misere);
        let d = classify(&spec, &pos(&[u64::MAX, 0, u64::MAX, 1]));
        assert_eq!(d.r1, Some(0));
        let spec = bounded(u64::MAX, Play::Normal);
        let _ = classify(&spec, &pos(&[u64::MAX, 3]));
    }
}
