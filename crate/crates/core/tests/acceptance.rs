//! Acceptance suite. Runs every exit criterion and prints one line each.
//!
//! The oracle side uses brute-force search only; expected values are never
//! taken from the closed form itself.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use greedy_nim::oracle::{enumerate_positions, oracle_outcome, MemoTable};
use greedy_nim::strategy::legal_move_count;
use greedy_nim::sweep::{sweep, SweepBounds};
use greedy_nim::{
    apply_move, beta, best_move, classify, constructive_move, is_singular, is_stable_move, outcome, remainder,
    GameSpec, MoveChoice, Outcome, Play, Position, Variant,
};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const HEADLINE_HEAPS: usize = 5;
const HEADLINE_SIZE: u64 = 12;
const GREEDY_SIZE: u64 = 10;
const REDUCTION_K: u64 = 10;
const PERF_SAMPLES: u64 = 1_000_000;
const PERF_HEAPS: usize = 100;
const PERF_MAX_HEAP: u64 = 1_000_000_000;
const PERF_LIMIT: Duration = Duration::from_secs(10);

type Outcome_ = Result<String, String>;

fn sweep_zero_mismatches(bounds: SweepBounds) -> Outcome_ {
    let report = sweep(&bounds).map_err(|e| e.to_string())?;
    if report.mismatches.is_empty() && report.violations.is_empty() {
        Ok(format!(
            "{} comparisons over {} positions, 0 mismatches ({:.2}s)",
            report.positions_checked,
            report.distinct_positions,
            report.elapsed.as_secs_f64()
        ))
    } else {
        let first: Vec<String> = report
            .mismatches
            .iter()
            .take(5)
            .map(|m| format!("{} {}: closed {} oracle {}", m.spec, m.position, m.closed_form, m.oracle))
            .chain(report.violations.iter().take(5).map(|v| format!("[{}] {} {}", v.check, v.position, v.detail)))
            .collect();
        Err(format!(
            "{} mismatches, {} violations; first: {}",
            report.mismatches.len(),
            report.violations.len(),
            first.join("; ")
        ))
    }
}

fn misere_bounded_equivalence() -> Outcome_ {
    sweep_zero_mismatches(
        SweepBounds::new(HEADLINE_HEAPS, HEADLINE_SIZE)
            .with_k([2, 3, 4])
            .with_plays([Play::Misere]),
    )
}

fn normal_bounded_equivalence() -> Outcome_ {
    sweep_zero_mismatches(
        SweepBounds::new(HEADLINE_HEAPS, HEADLINE_SIZE)
            .with_k([2, 3, 4])
            .with_plays([Play::Normal]),
    )
}

fn unit_k_equivalence() -> Outcome_ {
    sweep_zero_mismatches(SweepBounds::new(HEADLINE_HEAPS, HEADLINE_SIZE).with_k([1]))
}

fn greedy_equivalence() -> Outcome_ {
    sweep_zero_mismatches(SweepBounds::new(HEADLINE_HEAPS, GREEDY_SIZE).with_greedy())
}

fn reduction_property() -> Outcome_ {
    let memo = MemoTable::new();
    let mut checked = 0;
    for play in [Play::Normal, Play::Misere] {
        let bounded = GameSpec { variant: Variant::Bounded(REDUCTION_K), play };
        let greedy = GameSpec::greedy(play);
        for p in enumerate_positions(HEADLINE_HEAPS, GREEDY_SIZE) {
            checked += 1;
            let closed = (outcome(&bounded, &p), outcome(&greedy, &p));
            let truth = (oracle_outcome(&bounded, &p, &memo), oracle_outcome(&greedy, &p, &memo));
            if closed.0 != closed.1 || truth.0 != truth.1 {
                return Err(format!("{play} {p}: closed {closed:?}, oracle {truth:?}"));
            }
        }
    }
    Ok(format!("{checked} positions agree, k={REDUCTION_K}"))
}

fn singularity_law() -> Outcome_ {
    let mut checked = 0;
    for p in enumerate_positions(HEADLINE_HEAPS, GREEDY_SIZE) {
        checked += 1;
        if is_singular(Variant::Greedy, &p) != (p.largest() <= 1) {
            return Err(format!("{p}: singular={}", is_singular(Variant::Greedy, &p)));
        }
    }
    Ok(format!("{checked} positions, 0 exceptions"))
}

fn strategy_soundness() -> Outcome_ {
    let mut constructive_checked = 0;
    for k in [2, 3, 4] {
        let spec = GameSpec { variant: Variant::Bounded(k), play: Play::Misere };
        for p in enumerate_positions(HEADLINE_HEAPS, HEADLINE_SIZE) {
            if outcome(&spec, &p) != Outcome::N || p.total() < 2 {
                continue;
            }
            constructive_checked += 1;
            let t = constructive_move(&spec, &p)
                .map_err(|e| e.to_string())?
                .ok_or_else(|| format!("k={k} {p}: no constructive move"))?;
            if t.remove() > legal_move_count(&spec, &p) {
                return Err(format!("k={k} {p}: constructive move {t} is illegal"));
            }
            let next = apply_move(&p, t).map_err(|e| e.to_string())?;
            if outcome(&spec, &next) != Outcome::P {
                return Err(format!("k={k} {p}: constructive move {t} reaches {next}, an N-position"));
            }
        }
    }

    let memo = MemoTable::new();
    let mut specs: Vec<GameSpec> = (1..=4).map(Variant::Bounded).chain([Variant::Greedy])
        .flat_map(|variant| [Play::Normal, Play::Misere].map(|play| GameSpec { variant, play }))
        .collect();
    specs.sort();
    let mut best_checked = 0;
    for spec in &specs {
        let size = if spec.variant == Variant::Greedy { GREEDY_SIZE } else { HEADLINE_SIZE };
        for p in enumerate_positions(HEADLINE_HEAPS, size) {
            if outcome(spec, &p) != Outcome::N || legal_move_count(spec, &p) == 0 {
                continue;
            }
            best_checked += 1;
            let t = best_move(spec, &p).ok_or_else(|| format!("{spec} {p}: no best move"))?;
            let next = apply_move(&p, t).map_err(|e| e.to_string())?;
            // judged by the oracle, not the closed form
            if oracle_outcome(spec, &next, &memo) != Outcome::P {
                return Err(format!("{spec} {p}: best move {t} reaches N-position {next}"));
            }
        }
    }
    Ok(format!(
        "{constructive_checked} constructive moves and {best_checked} best moves reach P-positions"
    ))
}

fn stable_move_facts() -> Outcome_ {
    let mut checked = 0u64;
    for k in [2u64, 3, 4] {
        let spec = GameSpec { variant: Variant::Bounded(k), play: Play::Misere };
        let r = |a: u64, b: u64| remainder(a as i128 - b as i128, k);
        for p in enumerate_positions(HEADLINE_HEAPS, HEADLINE_SIZE) {
            let (x1, x2) = (p.x(1), p.x(2));
            let p_bullet = classify(&spec, &p).outcome == Outcome::P;
            for t in 1..=legal_move_count(&spec, &p) {
                checked += 1;
                let next = apply_move(&p, MoveChoice::new(t).unwrap()).unwrap();
                if is_stable_move(&p, t) {
                    // stable: only the first heap changes and β is kept
                    if next.x(1) != x1 - t || next.heaps()[1..] != p.heaps()[1..] || beta(&next) != beta(&p) {
                        return Err(format!("k={k} {p} t={t}: stable move changed {next}"));
                    }
                    // a stable move never links two P-positions
                    if p_bullet && classify(&spec, &next).outcome == Outcome::P {
                        return Err(format!("k={k} {p} t={t}: stable move from P reaches P {next}"));
                    }
                } else if next.x(1) != x2 {
                    return Err(format!("k={k} {p} t={t}: unstable move leaves {} on top", next.x(1)));
                }
            }
            let r1 = r(x1, x2);
            if r1 != 0 {
                let next = apply_move(&p, MoveChoice::new(r1).unwrap()).unwrap();
                if !is_stable_move(&p, r1) || r(next.x(1), next.x(2)) != 0 {
                    return Err(format!("k={k} {p}: removing r1={r1} is not a balancing stable move"));
                }
            }
        }
    }
    Ok(format!("{checked} (position, move) pairs, 0 violations"))
}

fn base_cases() -> Outcome_ {
    let variants = (1..=12).map(Variant::Bounded).chain([Variant::Greedy, Variant::Bounded(u64::MAX)]);
    let mut checked = 0;
    for variant in variants {
        for pad in 0..4 {
            let empty = Position::from_heaps(vec![0; pad]);
            let single = Position::from_heaps(std::iter::once(1).chain(vec![0; pad]));
            for (p, normal, misere) in [(empty, Outcome::P, Outcome::N), (single, Outcome::N, Outcome::P)] {
                checked += 1;
                let n = outcome(&GameSpec { variant, play: Play::Normal }, &p);
                let m = outcome(&GameSpec { variant, play: Play::Misere }, &p);
                if (n, m) != (normal, misere) {
                    return Err(format!("{variant} {p}: normal {n}, misere {m}"));
                }
            }
        }
    }
    Ok(format!("{checked} positions"))
}

fn performance() -> Outcome_ {
    let specs = [
        GameSpec { variant: Variant::Bounded(2), play: Play::Misere },
        GameSpec { variant: Variant::Bounded(7), play: Play::Normal },
        GameSpec { variant: Variant::Bounded(1), play: Play::Misere },
        GameSpec::greedy(Play::Misere),
    ];
    let mut rng = StdRng::seed_from_u64(2024);
    let mut heaps = vec![0u64; PERF_HEAPS];
    let mut p_count = 0u64;
    let started = Instant::now();
    for i in 0..PERF_SAMPLES {
        heaps.iter_mut().for_each(|h| *h = rng.gen_range(0..=PERF_MAX_HEAP));
        let p = Position::from_heaps(heaps.iter().copied());
        p_count += classify(&specs[i as usize % specs.len()], &p).outcome.is_p() as u64;
    }
    let elapsed = started.elapsed();
    let summary = format!(
        "{PERF_SAMPLES} positions of {PERF_HEAPS} heaps in {:.2}s ({p_count} P)",
        elapsed.as_secs_f64()
    );
    if elapsed < PERF_LIMIT {
        Ok(summary)
    } else {
        Err(format!("{summary}, limit {}s", PERF_LIMIT.as_secs()))
    }
}

type Criterion = (&'static str, fn() -> Outcome_);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("misere bounded k=2..4 closed form = oracle", misere_bounded_equivalence),
        ("normal bounded k=2..4 closed form = oracle", normal_bounded_equivalence),
        ("k=1 parity rule = oracle, both plays", unit_k_equivalence),
        ("greedy closed form = oracle, both plays", greedy_equivalence),
        ("bounded k=10 agrees with greedy on heaps <= 10", reduction_property),
        ("greedy singular iff x1 <= 1", singularity_law),
        ("constructive and best moves reach P-positions", strategy_soundness),
        ("stable-move facts", stable_move_facts),
        ("base cases (0 and 1 stones)", base_cases),
        ("closed-form classification speed", performance),
    ];

    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("[PASS] {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("[FAIL] {name}: {detail}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
