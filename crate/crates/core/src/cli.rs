//! Command-line front end. `main.rs` only forwards to [`run`].

use std::collections::BTreeSet;
use std::io::{BufRead, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::classify::outcome;
use crate::error::NimError;
use crate::game::{GameSpec, Outcome, Play, Variant};
use crate::oracle::{enumerate_positions, position_count};
use crate::position::Position;
use crate::service::{self, ClassifyRequest, CorsPolicy};
use crate::strategy::{apply_move, best_move, legal_move_count, winning_moves, MoveChoice};
use crate::sweep::{perf_probe, sweep, SweepBounds};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Upper limit on positions enumerated by `table`.
const MAX_TABLE_POSITIONS: u128 = 10_000_000;

#[derive(Debug, Parser)]
#[command(name = "greedy-nim", version, about = "Perfect play and verification for (bounded) Greedy Nim")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify a position and list its winning moves.
    Classify {
        #[command(flatten)]
        rules: RulesArgs,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Heap sizes in any order.
        #[arg(allow_negative_numbers = true)]
        heaps: Vec<String>,
    },
    /// Play against the engine in the terminal.
    Play {
        #[command(flatten)]
        rules: RulesArgs,
        /// Let the engine make the first move.
        #[arg(long)]
        engine_first: bool,
        #[arg(allow_negative_numbers = true, required = true)]
        heaps: Vec<String>,
    },
    /// Compare the closed form with exhaustive search.
    Verify(VerifyArgs),
    /// List the P-positions within bounds.
    Table {
        #[command(flatten)]
        rules: RulesArgs,
        #[arg(long, default_value_t = 3)]
        max_heaps: usize,
        #[arg(long = "max-size", default_value_t = 5)]
        max_heap_size: u64,
        /// Print every position with its outcome instead of only P-positions.
        #[arg(long)]
        all: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run the HTTP API.
    Serve {
        #[arg(long, default_value = "127.0.0.1")]
        host: String,
        #[arg(long, env = "GREEDY_NIM_PORT", default_value_t = 8080)]
        port: u16,
        /// Allowed browser origin; repeat for several. Any origin when omitted.
        #[arg(long = "cors-origin")]
        cors_origins: Vec<String>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantKind {
    Bounded,
    Greedy,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PlayArg {
    Normal,
    Misere,
}

impl From<PlayArg> for Play {
    fn from(p: PlayArg) -> Play {
        match p {
            PlayArg::Normal => Play::Normal,
            PlayArg::Misere => Play::Misere,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct RulesArgs {
    #[arg(long, value_enum, default_value_t = VariantKind::Bounded)]
    pub variant: VariantKind,
    /// Maximum stones per move (bounded variant).
    #[arg(long)]
    pub k: Option<u64>,
    #[arg(long, value_enum, default_value_t = PlayArg::Misere)]
    pub play: PlayArg,
}

impl RulesArgs {
    pub fn spec(&self) -> Result<GameSpec, String> {
        let variant = match (self.variant, self.k) {
            (VariantKind::Greedy, _) => Variant::Greedy,
            (VariantKind::Bounded, None) => return Err("--k is required for the bounded variant".into()),
            (VariantKind::Bounded, Some(k)) => Variant::bounded(k).map_err(|e| e.to_string())?,
        };
        Ok(GameSpec {
            variant,
            play: self.play.into(),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Which {
    Bounded,
    Greedy,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Plays {
    Normal,
    Misere,
    Both,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 5)]
    pub max_heaps: usize,
    #[arg(long = "max-size", default_value_t = 12)]
    pub max_heap_size: u64,
    /// k values for the bounded variant: comma list and/or a..b spans.
    #[arg(long, default_value = "1..4")]
    pub k: String,
    #[arg(long, value_enum, default_value_t = Which::Both)]
    pub variants: Which,
    #[arg(long, value_enum, default_value_t = Plays::Both)]
    pub plays: Plays,
    /// Also check engine moves and the stable-move facts.
    #[arg(long)]
    pub strategy: bool,
    /// Also time closed-form classification of this many random 100-heap positions.
    #[arg(long)]
    pub perf: Option<u64>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the JSON report to this file.
    #[arg(long)]
    pub report: Option<PathBuf>,
}

/// Parses `1,2,5..7` into `{1, 2, 5, 6, 7}`.
pub fn parse_k_list(s: &str) -> Result<BTreeSet<u64>, String> {
    let mut out = BTreeSet::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let num = |v: &str| v.trim().parse::<u64>().map_err(|_| format!("invalid k value `{v}`"));
        if let Some((lo, hi)) = part.split_once("..") {
            let (lo, hi) = (num(lo)?, num(hi.trim_start_matches('='))?);
            if lo > hi {
                return Err(format!("empty k range `{part}`"));
            }
            out.extend(lo..=hi);
        } else {
            out.insert(num(part)?);
        }
    }
    if let Some(&k) = out.iter().find(|&&k| k == 0) {
        return Err(NimError::InvalidK { k, min: 1 }.to_string());
    }
    Ok(out)
}

pub fn parse_heaps(args: &[String]) -> Result<Position, String> {
    let raw = args
        .iter()
        .flat_map(|a| a.split_whitespace())
        .map(|tok| tok.parse::<i128>().map_err(|_| format!("invalid heap `{tok}`")))
        .collect::<Result<Vec<_>, _>>()?;
    Position::normalize(&raw).map_err(|e| e.to_string())
}

fn format_heaps(p: &Position) -> String {
    p.heaps().iter().map(u64::to_string).collect::<Vec<_>>().join(" ")
}

fn format_moves(moves: &[MoveChoice]) -> String {
    let list: Vec<String> = moves.iter().map(|t| t.to_string()).collect();
    format!("[{}]", list.join(", "))
}

/// Parses `args` and runs the selected command. Returns the exit status.
pub fn run<I, T>(args: I, input: &mut dyn BufRead, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = if code == 0 { write!(out, "{e}") } else { write!(err, "{e}") };
            return code;
        }
    };
    let result = match cli.command {
        Command::Classify { rules, format, heaps } => run_classify(&rules, &heaps, format, out),
        Command::Play { rules, engine_first, heaps } => run_play(&rules, &heaps, engine_first, input, out),
        Command::Verify(args) => run_verify(&args, out),
        Command::Table {
            rules,
            max_heaps,
            max_heap_size,
            all,
            format,
        } => run_table(&rules, max_heaps, max_heap_size, all, format, out),
        Command::Serve { host, port, cors_origins } => run_serve(&host, port, cors_origins),
    };
    match result {
        Ok(code) => code,
        Err(CliError { code, message }) => {
            let _ = writeln!(err, "error: {message}");
            code
        }
    }
}

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn failure(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_FAILURE,
            message: message.into(),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::failure(e.to_string())
    }
}

type CliResult = Result<i32, CliError>;

pub fn run_classify(rules: &RulesArgs, heaps: &[String], format: Format, out: &mut dyn Write) -> CliResult {
    let spec = rules.spec().map_err(CliError::usage)?;
    let position = parse_heaps(heaps).map_err(CliError::usage)?;
    let req = ClassifyRequest { spec, position };
    let resp = service::handle_classify(&req).map_err(|e| CliError::usage(e.message))?;

    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, &resp).map_err(|e| CliError::failure(e.to_string()))?;
            writeln!(out)?;
        }
        Format::Text => {
            let moves: Vec<MoveChoice> = resp.winning_moves.iter().map(|&t| MoveChoice::new(t).unwrap()).collect();
            match resp.outcome {
                Outcome::P => writeln!(out, "P")?,
                Outcome::N => writeln!(out, "N, winning moves: {}", format_moves(&moves))?,
            }
            let d = &resp.detail;
            writeln!(out, "position: {}", req.position)?;
            writeln!(out, "rules: {spec}")?;
            writeln!(out, "clause: {} ({})", d.matched_clause, d.matched_clause.code())?;
            let mut evidence = format!("beta: {}, alpha: {}", d.beta, d.alpha);
            if let Some(r1) = d.r1 {
                evidence.push_str(&format!(", r1: {r1}"));
            }
            if let Some(g) = d.k_good {
                evidence.push_str(&format!(", k-good: {g}"));
            }
            if let Some(n) = d.k_nice {
                evidence.push_str(&format!(", k-nice: {n}"));
            }
            writeln!(out, "{evidence}")?;
            writeln!(out, "singular: {}", resp.singular)?;
            if resp.outcome == Outcome::N && !req.position.has_stones() {
                writeln!(out, "no move available: the player to move wins by immobility")?;
            }
        }
    }
    Ok(EXIT_OK)
}

pub fn run_verify(args: &VerifyArgs, out: &mut dyn Write) -> CliResult {
    let ks = parse_k_list(&args.k).map_err(CliError::usage)?;
    let mut bounds = SweepBounds::new(args.max_heaps, args.max_heap_size);
    if matches!(args.variants, Which::Bounded | Which::Both) {
        bounds = bounds.with_k(ks);
    }
    if matches!(args.variants, Which::Greedy | Which::Both) {
        bounds = bounds.with_greedy();
    }
    bounds = match args.plays {
        Plays::Normal => bounds.with_plays([Play::Normal]),
        Plays::Misere => bounds.with_plays([Play::Misere]),
        Plays::Both => bounds.with_plays([Play::Normal, Play::Misere]),
    };
    bounds.check_strategy = args.strategy;
    if position_count(args.max_heaps, args.max_heap_size) > MAX_TABLE_POSITIONS {
        return Err(CliError::usage("bounds enumerate too many positions"));
    }

    let report = sweep(&bounds).map_err(|e| CliError::usage(e.to_string()))?;
    let perf = args.perf.map(|n| perf_probe(n, 100, 1_000_000_000, 0x5eed));

    if let Some(path) = &args.report {
        let doc = serde_json::json!({ "sweep": report, "perf": perf });
        std::fs::write(path, serde_json::to_string_pretty(&doc).unwrap())?;
    }
    match args.format {
        Format::Json => {
            let doc = serde_json::json!({ "sweep": report, "perf": perf });
            writeln!(out, "{}", serde_json::to_string_pretty(&doc).unwrap())?;
        }
        Format::Text => {
            writeln!(out, "{report}")?;
            if let Some(p) = &perf {
                writeln!(
                    out,
                    "perf: {} positions of {} heaps classified in {:.3}s",
                    p.samples,
                    p.heaps,
                    p.elapsed.as_secs_f64()
                )?;
            }
        }
    }
    Ok(if report.passed() { EXIT_OK } else { EXIT_FAILURE })
}

pub fn run_table(
    rules: &RulesArgs,
    max_heaps: usize,
    max_heap_size: u64,
    all: bool,
    format: Format,
    out: &mut dyn Write,
) -> CliResult {
    let spec = rules.spec().map_err(CliError::usage)?;
    if position_count(max_heaps, max_heap_size) > MAX_TABLE_POSITIONS {
        return Err(CliError::usage("bounds enumerate too many positions"));
    }
    let mut rows: Vec<(Position, Outcome)> = enumerate_positions(max_heaps, max_heap_size)
        .map(|p| {
            let o = outcome(&spec, &p);
            (p, o)
        })
        .filter(|(_, o)| all || o.is_p())
        .collect();
    rows.sort_by(|a, b| a.0.heaps().cmp(b.0.heaps()));

    match format {
        Format::Json => {
            let doc: Vec<serde_json::Value> = rows
                .iter()
                .map(|(p, o)| {
                    if all {
                        serde_json::json!({ "heaps": p, "outcome": o })
                    } else {
                        serde_json::json!(p)
                    }
                })
                .collect();
            writeln!(out, "{}", serde_json::to_string(&doc).unwrap())?;
        }
        Format::Text => {
            writeln!(
                out,
                "# {} positions, {spec}, at most {max_heaps} heaps of at most {max_heap_size} stones",
                if all { "all" } else { "P" }
            )?;
            for (p, o) in &rows {
                writeln!(out, "{} : {o}", format_heaps(p))?;
            }
        }
    }
    Ok(EXIT_OK)
}

fn read_command(input: &mut dyn BufRead) -> std::io::Result<Option<String>> {
    let mut line = String::new();
    if input.read_line(&mut line)? == 0 {
        return Ok(None);
    }
    Ok(Some(line.trim().to_ascii_lowercase()))
}

/// Alternating human/engine game on stdin/stdout.
pub fn run_play(
    rules: &RulesArgs,
    heaps: &[String],
    engine_first: bool,
    input: &mut dyn BufRead,
    out: &mut dyn Write,
) -> CliResult {
    let spec = rules.spec().map_err(CliError::usage)?;
    let mut position = parse_heaps(heaps).map_err(CliError::usage)?;
    let mut human_turn = !engine_first;
    writeln!(out, "{spec}. Commands: a number of stones to take, `hint`, `quit`.")?;

    loop {
        writeln!(out, "position: {}", format_heaps(&position))?;
        let max = legal_move_count(&spec, &position);
        if max == 0 {
            let mover_wins = spec.play == Play::Misere;
            let human_wins = mover_wins == human_turn;
            let who = if human_turn { "you" } else { "the engine" };
            writeln!(
                out,
                "no stones left and {who} cannot move: {}",
                if human_wins { "you win!" } else { "the engine wins." }
            )?;
            return Ok(EXIT_OK);
        }

        if human_turn {
            write!(out, "your move (1-{max}): ")?;
            out.flush()?;
            let Some(cmd) = read_command(input)? else {
                writeln!(out, "\nbye")?;
                return Ok(EXIT_OK);
            };
            match cmd.as_str() {
                "quit" | "q" | "exit" => {
                    writeln!(out, "bye")?;
                    return Ok(EXIT_OK);
                }
                "hint" | "h" => {
                    if legal_move_count(&spec, &position) > service::MAX_MOVE_SCAN {
                        writeln!(out, "hint: position too large to search")?;
                        continue;
                    }
                    let moves = winning_moves(&spec, &position);
                    if moves.is_empty() {
                        writeln!(out, "hint: no winning move, this is a P-position")?;
                    } else {
                        writeln!(out, "hint: winning moves {}", format_moves(&moves))?;
                    }
                }
                other => match other.parse::<u64>() {
                    Ok(t) if (1..=max).contains(&t) => {
                        position = apply_move(&position, MoveChoice::new(t).unwrap()).expect("checked");
                        human_turn = false;
                    }
                    _ => writeln!(out, "illegal move `{other}`: take between 1 and {max} stones")?,
                },
            }
        } else {
            let t = if max > service::MAX_MOVE_SCAN {
                None
            } else {
                best_move(&spec, &position)
            }
            .unwrap_or_else(|| MoveChoice::new(1).unwrap());
            position = apply_move(&position, t).expect("engine moves are legal");
            writeln!(out, "engine takes {t}")?;
            human_turn = true;
        }
    }
}

pub fn run_serve(host: &str, port: u16, cors_origins: Vec<String>) -> CliResult {
    let _ = tracing_subscriber::fmt()
        .with_env_filter(
            tracing_subscriber::EnvFilter::try_from_default_env()
                .unwrap_or_else(|_| "info,tower_http=debug".into()),
        )
        .try_init();
    let cors = if cors_origins.is_empty() {
        CorsPolicy::Any
    } else {
        CorsPolicy::Origins(cors_origins)
    };
    let runtime = tokio::runtime::Runtime::new()?;
    runtime.block_on(async {
        let listener = tokio::net::TcpListener::bind((host, port))
            .await
            .map_err(|e| CliError::failure(format!("cannot bind {host}:{port}: {e}")))?;
        tracing::info!("listening on {}", listener.local_addr()?);
        service::serve(listener, &cors).await?;
        Ok(EXIT_OK)
    })
}
