//! Exhaustive closed-form versus oracle sweeps.

use std::collections::BTreeSet;
use std::fmt;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::classify::{classify, is_singular, outcome};
use crate::error::{NimError, Result};
use crate::game::{GameSpec, Outcome, Play, Variant};
use crate::oracle::{enumerate_positions, oracle_outcome, MemoTable};
use crate::position::Position;
use crate::strategy::{apply_move, best_move, constructive_move, stable_move_violations, winning_moves};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepBounds {
    pub max_heaps: usize,
    pub max_heap_size: u64,
    pub k_values: BTreeSet<u64>,
    pub bounded: bool,
    pub greedy: bool,
    pub plays: BTreeSet<Play>,
    /// Also check constructive and best moves and the stable-move facts.
    pub check_strategy: bool,
}

impl SweepBounds {
    pub fn new(max_heaps: usize, max_heap_size: u64) -> Self {
        SweepBounds {
            max_heaps,
            max_heap_size,
            k_values: BTreeSet::new(),
            bounded: false,
            greedy: false,
            plays: [Play::Normal, Play::Misere].into(),
            check_strategy: false,
        }
    }

    pub fn with_k<I: IntoIterator<Item = u64>>(mut self, ks: I) -> Self {
        self.k_values.extend(ks);
        self.bounded = true;
        self
    }

    pub fn with_greedy(mut self) -> Self {
        self.greedy = true;
        self
    }

    pub fn with_plays<I: IntoIterator<Item = Play>>(mut self, plays: I) -> Self {
        self.plays = plays.into_iter().collect();
        self
    }

    pub fn with_strategy(mut self) -> Self {
        self.check_strategy = true;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if let Some(&k) = self.k_values.iter().find(|&&k| k == 0) {
            return Err(NimError::InvalidK { k, min: 1 });
        }
        if self.bounded && self.k_values.is_empty() {
            return Err(NimError::Unsupported("bounded sweeps need at least one k"));
        }
        Ok(())
    }

    /// Rule sets covered, in a fixed order.
    pub fn specs(&self) -> Vec<GameSpec> {
        let mut variants: Vec<Variant> = Vec::new();
        if self.bounded {
            variants.extend(self.k_values.iter().map(|&k| Variant::Bounded(k)));
        }
        if self.greedy {
            variants.push(Variant::Greedy);
        }
        variants
            .into_iter()
            .flat_map(|variant| self.plays.iter().map(move |&play| GameSpec { variant, play }))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Mismatch {
    pub spec: GameSpec,
    pub position: Position,
    pub closed_form: Outcome,
    pub oracle: Outcome,
}

/// A failed strategy or structural check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub check: &'static str,
    pub spec: GameSpec,
    pub position: Position,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SweepReport {
    pub max_heaps: usize,
    pub max_heap_size: u64,
    pub specs: Vec<GameSpec>,
    pub distinct_positions: u64,
    /// Number of (rule set, position) pairs compared.
    pub positions_checked: u64,
    pub strategy_checked: bool,
    pub mismatches: Vec<Mismatch>,
    pub violations: Vec<Violation>,
    #[serde(rename = "elapsedSeconds", serialize_with = "as_seconds")]
    pub elapsed: Duration,
}

fn as_seconds<S: Serializer>(d: &Duration, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64())
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty() && self.violations.is_empty()
    }
}

impl fmt::Display for SweepReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "sweep: up to {} heaps of at most {} stones ({} positions)",
            self.max_heaps, self.max_heap_size, self.distinct_positions
        )?;
        let specs: Vec<String> = self.specs.iter().map(|s| s.to_string()).collect();
        writeln!(f, "rule sets: {}", specs.join(", "))?;
        writeln!(f, "checked: {}", self.positions_checked)?;
        writeln!(f, "mismatches: {}", self.mismatches.len())?;
        for m in &self.mismatches {
            writeln!(f, "  {} {}: closed form {}, oracle {}", m.spec, m.position, m.closed_form, m.oracle)?;
        }
        if self.strategy_checked || !self.violations.is_empty() {
            writeln!(f, "violations: {}", self.violations.len())?;
            for v in &self.violations {
                writeln!(f, "  [{}] {} {}: {}", v.check, v.spec, v.position, v.detail)?;
            }
        }
        writeln!(f, "elapsed: {:.3}s", self.elapsed.as_secs_f64())?;
        write!(f, "result: {}", if self.passed() { "PASS" } else { "FAIL" })
    }
}

/// Compares the closed form to the oracle on every position within `bounds`.
///
/// Besides outcome equivalence it checks the laws that tie rule sets
/// together: base cases, the greedy singularity rule, and agreement of
/// `Bounded(k)` with greedy play once `k` covers every heap.
pub fn sweep(bounds: &SweepBounds) -> Result<SweepReport> {
    bounds.validate()?;
    let started = Instant::now();
    let positions: Vec<Position> = enumerate_positions(bounds.max_heaps, bounds.max_heap_size).collect();
    let specs = bounds.specs();
    let memo = MemoTable::new();

    let mut mismatches = Vec::new();
    let mut violations = Vec::new();
    for spec in &specs {
        let results: Vec<(Option<Mismatch>, Vec<Violation>)> = positions
            .par_iter()
            .map(|p| check_position(spec, p, &memo, bounds))
            .collect();
        for (m, v) in results {
            mismatches.extend(m);
            violations.extend(v);
        }
    }

    if bounds.greedy {
        for play in &bounds.plays {
            let greedy = GameSpec::greedy(*play);
            for &k in bounds.k_values.iter().filter(|&&k| k >= bounds.max_heap_size && bounds.bounded) {
                let spec = GameSpec { variant: Variant::Bounded(k), play: *play };
                for p in &positions {
                    let (b, g) = (oracle_outcome(&spec, p, &memo), oracle_outcome(&greedy, p, &memo));
                    let (cb, cg) = (outcome(&spec, p), outcome(&greedy, p));
                    if b != g || cb != cg {
                        violations.push(Violation {
                            check: "reduction",
                            spec,
                            position: p.clone(),
                            detail: format!("bounded {cb}/{b} vs greedy {cg}/{g} (closed form/oracle)"),
                        });
                    }
                }
            }
        }
    }

    Ok(SweepReport {
        max_heaps: bounds.max_heaps,
        max_heap_size: bounds.max_heap_size,
        distinct_positions: positions.len() as u64,
        positions_checked: (positions.len() * specs.len()) as u64,
        specs,
        strategy_checked: bounds.check_strategy,
        mismatches,
        violations,
        elapsed: started.elapsed(),
    })
}

fn check_position(
    spec: &GameSpec,
    p: &Position,
    memo: &MemoTable,
    bounds: &SweepBounds,
) -> (Option<Mismatch>, Vec<Violation>) {
    let closed = classify(spec, p).outcome;
    let truth = oracle_outcome(spec, p, memo);
    let mismatch = (closed != truth).then(|| Mismatch {
        spec: *spec,
        position: p.clone(),
        closed_form: closed,
        oracle: truth,
    });

    let mut violations = Vec::new();
    let mut fail = |check, detail: String| {
        violations.push(Violation { check, spec: *spec, position: p.clone(), detail })
    };

    let total = p.total();
    if total <= 1 {
        let expected = match (spec.play, total) {
            (Play::Normal, 0) | (Play::Misere, 1) => Outcome::P,
            _ => Outcome::N,
        };
        if closed != expected {
            fail("base_case", format!("expected {expected}, closed form {closed}"));
        }
    }

    if spec.variant == Variant::Greedy && spec.play == Play::Misere {
        let singular = is_singular(Variant::Greedy, p);
        if singular != (p.largest() <= 1) {
            fail("singularity", format!("singular={singular} with x1={}", p.largest()));
        }
    }

    if bounds.check_strategy {
        check_strategy(spec, p, closed, &mut fail);
    }
    (mismatch, violations)
}

fn check_strategy(spec: &GameSpec, p: &Position, closed: Outcome, fail: &mut impl FnMut(&'static str, String)) {
    let winning = winning_moves(spec, p);
    match closed {
        Outcome::P if !winning.is_empty() => fail("winning_moves", format!("P-position has winning moves {winning:?}")),
        Outcome::N if p.has_stones() => match best_move(spec, p) {
            None => fail("best_move", "N-position without a best move".into()),
            Some(t) => {
                let next = apply_move(p, t).expect("legal");
                if outcome(spec, &next) != Outcome::P {
                    fail("best_move", format!("best move {t} reaches an N-position"));
                }
            }
        },
        _ => {}
    }

    let Variant::Bounded(k) = spec.variant else { return };
    if spec.play != Play::Misere || k < 2 {
        return;
    }
    if closed == Outcome::N && p.total() >= 2 {
        match constructive_move(spec, p) {
            Ok(Some(t)) if winning.contains(&t) => {}
            Ok(Some(t)) => fail("constructive", format!("constructive move {t} is not winning")),
            other => fail("constructive", format!("no constructive move ({other:?})")),
        }
    }
    for v in stable_move_violations(k, p) {
        fail("stable_move", format!("t={}: {}", v.remove, v.fact));
    }
}

/// Timing of closed-form classification on random large positions.
#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct PerfReport {
    pub samples: u64,
    pub heaps: usize,
    pub max_heap_size: u64,
    pub p_positions: u64,
    #[serde(rename = "elapsedSeconds", serialize_with = "as_seconds")]
    pub elapsed: Duration,
}

/// Classifies `samples` random positions of `heaps` heaps (sizes in
/// `0..=max_heap_size`) under a rotating set of rule sets.
pub fn perf_probe(samples: u64, heaps: usize, max_heap_size: u64, seed: u64) -> PerfReport {
    let specs = [
        GameSpec { variant: Variant::Bounded(2), play: Play::Misere },
        GameSpec { variant: Variant::Bounded(1_000), play: Play::Normal },
        GameSpec { variant: Variant::Bounded(1), play: Play::Misere },
        GameSpec::greedy(Play::Misere),
        GameSpec::greedy(Play::Normal),
    ];
    let mut rng = StdRng::seed_from_u64(seed);
    let mut buf = vec![0u64; heaps];
    let mut p_positions = 0;
    let started = Instant::now();
    for i in 0..samples {
        buf.iter_mut().for_each(|h| *h = rng.gen_range(0..=max_heap_size));
        let p = Position::from_heaps(buf.iter().copied());
        if outcome(&specs[(i % specs.len() as u64) as usize], &p).is_p() {
            p_positions += 1;
        }
    }
    PerfReport {
        samples,
        heaps,
        max_heap_size,
        p_positions,
        elapsed: started.elapsed(),
    }
}
