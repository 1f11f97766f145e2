//! `isolator`: solve positions, print value tables, run the verification
//! suites, play strategies against each other, or play by hand.
//!
//! Every flag can also be set through an `ISOLATOR_*` environment variable;
//! a flag given on the command line wins over the variable.
//!
//! Exit codes: 0 success, 1 a check failed, 2 bad usage or input,
//! 3 search budget exhausted, 4 any other failure.

mod play;

use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use isolator_core::harness::{self, MatchRecord, SuiteReport, TableRow, VerifyConfig, TABLE_SCHEMA_VERSION};
use isolator_core::strategies::AnyStrategy;
use isolator_core::{BoardError, Budget, GameSpec, Origin, Player, Position, SolveError, Solver};
use serde::Serialize;

#[derive(Parser, Debug)]
#[command(name = "isolator", version, about = "Exact values and strategy checks for Maker-Breaker pair games on cycles and paths")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct Common {
    /// Output format; commands default to text, `table` to csv.
    #[arg(long, global = true, value_enum, env = "ISOLATOR_FORMAT")]
    format: Option<Format>,
    /// Write output here instead of stdout.
    #[arg(long, global = true, value_name = "PATH", env = "ISOLATOR_OUT")]
    out: Option<PathBuf>,
    /// Solver table to load before and save after the run.
    #[arg(long, global = true, value_name = "PATH", env = "ISOLATOR_CACHE")]
    cache: Option<PathBuf>,
    #[arg(long, global = true, value_name = "N", env = "ISOLATOR_MAX_NODES")]
    max_nodes: Option<u64>,
    #[arg(long, global = true, value_name = "SECS", env = "ISOLATOR_MAX_SECONDS")]
    max_seconds: Option<f64>,
    /// Seed for random strategies and random test positions.
    #[arg(long, global = true, value_name = "U64", env = "ISOLATOR_SEED")]
    seed: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct Game {
    /// Cycle with N vertices.
    #[arg(long, value_name = "N", env = "ISOLATOR_CYCLE")]
    cycle: Option<u32>,
    /// Path with N vertices, Breaker first.
    #[arg(long, value_name = "N", env = "ISOLATOR_PATH")]
    path: Option<u32>,
    /// Plain path of N cells after K free Breaker claims.
    #[arg(long, num_args = 2, value_names = ["N", "K"], value_delimiter = ',', env = "ISOLATOR_DELAYED")]
    delayed: Option<Vec<u32>>,
    /// Component list such as "F3,G1,H2".
    #[arg(long, value_name = "STR", env = "ISOLATOR_POS")]
    pos: Option<String>,
}

#[derive(Args, Debug)]
struct GameArgs {
    #[command(flatten)]
    game: Game,
    /// Player to move for --pos.
    #[arg(long, default_value = "maker", env = "ISOLATOR_TO_MOVE")]
    to_move: Player,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exact value and first optimal move.
    Solve(GameArgs),
    /// Solver values against the closed forms for a range of n.
    Table {
        #[arg(long, default_value_t = 3, env = "ISOLATOR_N_FROM")]
        n_from: u32,
        #[arg(long, default_value_t = 21, env = "ISOLATOR_N_TO")]
        n_to: u32,
        /// Skip the solver and print the closed forms only.
        #[arg(long, env = "ISOLATOR_FORMULA_ONLY")]
        formula_only: bool,
    },
    /// Run the verification suites.
    Verify(VerifyArgs),
    /// Play two strategies against each other.
    Match {
        #[command(flatten)]
        game: GameArgs,
        #[arg(long, value_name = "ID", env = "ISOLATOR_MAKER")]
        maker: String,
        #[arg(long, value_name = "ID", env = "ISOLATOR_BREAKER")]
        breaker: String,
    },
    /// Play by hand against a strategy.
    Play {
        #[command(flatten)]
        game: GameArgs,
        #[arg(long, default_value = "maker", env = "ISOLATOR_HUMAN")]
        human: Player,
        #[arg(long, value_name = "ID", default_value = "optimal", env = "ISOLATOR_ENGINE")]
        engine: String,
    },
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Only run these suites (repeatable).
    #[arg(long = "suite", value_name = "NAME")]
    suites: Vec<String>,
    #[arg(long, env = "ISOLATOR_LEMMA5_RANDOM_POSITIONS")]
    lemma5_random_positions: Option<u32>,
    #[arg(long, env = "ISOLATOR_LEMMA5_TOTAL_MAX")]
    lemma5_total_max: Option<u32>,
    #[arg(long, env = "ISOLATOR_ORACLE_CAP")]
    oracle_cap: Option<usize>,
    #[arg(long, env = "ISOLATOR_ORACLE_F_MAX")]
    oracle_f_max: Option<u32>,
    #[arg(long, env = "ISOLATOR_ORACLE_H_MAX")]
    oracle_h_max: Option<u32>,
    #[arg(long, env = "ISOLATOR_EXACT_N_MAX")]
    exact_n_max: Option<u32>,
    #[arg(long, env = "ISOLATOR_SANDWICH_N_MAX")]
    sandwich_n_max: Option<u32>,
    #[arg(long, env = "ISOLATOR_LEMMA3_N_MAX")]
    lemma3_n_max: Option<u32>,
    #[arg(long, env = "ISOLATOR_LEMMA4_N_MAX")]
    lemma4_n_max: Option<u32>,
    /// Harness self-test: replace the reply-table Breaker with a broken one.
    #[arg(long, hide = true)]
    corrupt_breaker: bool,
}

#[derive(Debug)]
struct Usage(String);

impl fmt::Display for Usage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    Usage(msg.into()).into()
}

impl GameArgs {
    fn spec(&self) -> Result<GameSpec> {
        let g = &self.game;
        let spec = if let Some(n) = g.cycle {
            GameSpec::cycle(n)
        } else if let Some(n) = g.path {
            GameSpec::path(n)
        } else if let Some(v) = &g.delayed {
            match v.as_slice() {
                [n, k] => GameSpec::delayed(*n, *k),
                _ => return Err(usage("--delayed takes two numbers, N and K")),
            }
        } else if let Some(s) = &g.pos {
            Position::parse(s, self.to_move).map(GameSpec::raw)
        } else {
            return Err(usage("choose a game with --cycle, --path, --delayed or --pos"));
        };
        Ok(spec?)
    }
}

impl Common {
    fn budget(&self) -> Result<Budget> {
        let mut b = Budget::default();
        if let Some(n) = self.max_nodes {
            b.max_nodes = n;
        }
        if let Some(s) = self.max_seconds {
            b.max_time = Duration::try_from_secs_f64(s).map_err(|_| usage(format!("bad --max-seconds {s}")))?;
        }
        Ok(b)
    }

    fn solver(&self) -> Result<Solver> {
        let mut solver = Solver::with_budget(self.budget()?);
        if let Some(path) = self.cache.as_ref().filter(|p| p.exists()) {
            if let Err(e) = solver.load_cache(path) {
                eprintln!("warning: ignoring cache {}: {e}", path.display());
                solver.clear();
            }
        }
        Ok(solver)
    }

    fn save(&self, solver: &Solver) -> Result<()> {
        if let Some(path) = &self.cache {
            solver.save_cache(path).with_context(|| format!("saving cache to {}", path.display()))?;
        }
        Ok(())
    }

    fn emit(&self, text: &str) -> Result<()> {
        match &self.out {
            Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
            None => {
                let mut out = io::stdout().lock();
                out.write_all(text.as_bytes())?;
                out.flush()?;
                Ok(())
            }
        }
    }

    fn strategy(&self, id: &str) -> Result<AnyStrategy> {
        let s = AnyStrategy::from_id(id, self.seed).map_err(|e| usage(e.to_string()))?;
        Ok(s)
    }
}

fn csv_text<T: Serialize>(comment: &str, rows: &[T]) -> Result<String> {
    let mut buf = format!("# {comment}\n").into_bytes();
    {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(&mut buf);
        for r in rows {
            w.serialize(r)?;
        }
        w.flush()?;
    }
    Ok(String::from_utf8(buf)?)
}

fn json_text<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

#[derive(Serialize)]
struct SolveRow {
    game: String,
    position: String,
    to_move: Player,
    pending_free_breaker_moves: u32,
    value: u32,
    principal_component: Option<String>,
    principal_cell: Option<u32>,
    nodes_expanded: u64,
}

fn cmd_solve(common: &Common, args: &GameArgs) -> Result<bool> {
    let spec = args.spec()?;
    let mut solver = common.solver()?;
    let r = solver.solve_spec(&spec)?;
    common.save(&solver)?;
    let principal = r.principal_move.map(|m| (spec.position.components()[m.component_index], m.cell));
    let row = SolveRow {
        game: spec.origin.to_string(),
        position: spec.position.components().iter().map(|c| c.to_string()).collect::<Vec<_>>().join(","),
        to_move: spec.first_player(),
        pending_free_breaker_moves: spec.pending_free_breaker_moves,
        value: r.value,
        principal_component: principal.map(|(c, _)| c.to_string()),
        principal_cell: principal.map(|(_, j)| j),
        nodes_expanded: r.nodes_expanded,
    };
    let text = match common.format.unwrap_or(Format::Text) {
        Format::Csv => csv_text("isolator solve v1", &[row])?,
        Format::Json => json_text(&row)?,
        Format::Text => {
            let mut t = format!("{}: {}\nvalue {}\n", row.game, spec.position, row.value);
            if let Some((c, j)) = principal {
                t += &format!("first optimal move for {}: cell {j} of {c}\n", row.to_move);
            }
            if spec.pending_free_breaker_moves > 0 {
                t += &format!("after {} free Breaker claims\n", spec.pending_free_breaker_moves);
            }
            t + &format!("nodes expanded {}\n", row.nodes_expanded)
        }
    };
    common.emit(&text)?;
    Ok(true)
}

#[derive(Serialize)]
struct TableDoc<'a> {
    schema_version: u32,
    rows: &'a [TableRow],
}

fn cmd_table(common: &Common, n_from: u32, n_to: u32, formula_only: bool) -> Result<bool> {
    if n_from == 0 || n_from > n_to {
        return Err(usage(format!("empty range --n-from {n_from} --n-to {n_to}")));
    }
    let mut solver = if formula_only { None } else { Some(common.solver()?) };
    let rows = harness::table_rows(n_from, n_to, solver.as_mut())?;
    if let Some(s) = &solver {
        common.save(s)?;
    }
    let text = match common.format.unwrap_or(Format::Csv) {
        Format::Json => json_text(&TableDoc { schema_version: TABLE_SCHEMA_VERSION, rows: &rows })?,
        _ => csv_text(&format!("isolator table schema {TABLE_SCHEMA_VERSION}"), &rows)?,
    };
    common.emit(&text)?;
    let all_match = rows.iter().all(|r| r.cycle_match != Some(false) && r.path_match != Some(false));
    Ok(all_match)
}

fn cmd_verify(common: &Common, args: &VerifyArgs) -> Result<bool> {
    let mut cfg = VerifyConfig { budget: common.budget()?, corrupt_breaker: args.corrupt_breaker, ..Default::default() };
    if let Some(s) = common.seed {
        cfg.seed = s;
    }
    let overrides = [
        (args.lemma5_random_positions, &mut cfg.lemma5_random_positions),
        (args.lemma5_total_max, &mut cfg.lemma5_total_max),
        (args.oracle_f_max, &mut cfg.oracle_f_max),
        (args.oracle_h_max, &mut cfg.oracle_h_max),
        (args.exact_n_max, &mut cfg.exact_n_max),
        (args.sandwich_n_max, &mut cfg.sandwich_n_max),
        (args.lemma3_n_max, &mut cfg.lemma3_n_max),
        (args.lemma4_n_max, &mut cfg.lemma4_n_max),
    ];
    for (value, slot) in overrides {
        if let Some(v) = value {
            *slot = v;
        }
    }
    if let Some(c) = args.oracle_cap {
        cfg.oracle_cap = c;
    }
    let names: Vec<&str> = if args.suites.is_empty() {
        harness::SUITES.to_vec()
    } else {
        for s in &args.suites {
            if !harness::SUITES.contains(&s.as_str()) {
                return Err(usage(format!("unknown suite `{s}`; known: {}", harness::SUITES.join(", "))));
            }
        }
        args.suites.iter().map(String::as_str).collect()
    };
    let mut solver = common.solver()?;
    let mut reports: Vec<SuiteReport> = Vec::new();
    for name in names {
        reports.push(harness::run_suite(name, &cfg, &mut solver)?);
    }
    common.save(&solver)?;
    let text = match common.format.unwrap_or(Format::Text) {
        Format::Csv => csv_text("isolator verify v1", &reports)?,
        Format::Json => json_text(&reports)?,
        Format::Text => {
            let mut t = String::new();
            for r in &reports {
                let mark = if r.passed { "PASS" } else { "FAIL" };
                t += &format!("{mark} {:<26} [{}] {}\n", r.name, r.scale, r.detail);
            }
            let failed = reports.iter().filter(|r| !r.passed).count();
            t + &format!("{} suites, {failed} failed\n", reports.len())
        }
    };
    common.emit(&text)?;
    Ok(reports.iter().all(|r| r.passed))
}

#[derive(Serialize)]
struct PlyRow {
    ply: usize,
    player: Player,
    cell: usize,
    component_index: usize,
    local_cell: u32,
    delta: u32,
}

fn match_text(rec: &MatchRecord, format: Format) -> Result<String> {
    let refs: Vec<String> = rec.references.iter().map(|r| format!("{} = {}", r.label, r.value)).collect();
    Ok(match format {
        Format::Json => json_text(rec)?,
        Format::Csv => {
            let rows: Vec<PlyRow> = rec
                .transcript
                .iter()
                .enumerate()
                .map(|(i, p)| PlyRow {
                    ply: i + 1,
                    player: p.player,
                    cell: p.cell,
                    component_index: p.canonical.component_index,
                    local_cell: p.canonical.cell,
                    delta: p.delta,
                })
                .collect();
            let comment = format!(
                "isolator match v1 game={} maker={} breaker={} final_score={} {}",
                rec.spec,
                rec.maker,
                rec.breaker,
                rec.final_score,
                refs.join(" ").replace(' ', "")
            );
            csv_text(comment.trim_end(), &rows)?
        }
        Format::Text => {
            let mut t = format!("{}: {} (Maker) vs {} (Breaker)\n", rec.spec, rec.maker, rec.breaker);
            for (i, p) in rec.transcript.iter().enumerate() {
                t += &format!("{:>3}. {:<7} cell {:>3} (+{})\n", i + 1, p.player.to_string(), p.cell, p.delta);
            }
            t += &format!("final score {}\n", rec.final_score);
            for r in refs {
                t += &format!("{r}\n");
            }
            t
        }
    })
}

fn cmd_match(common: &Common, game: &GameArgs, maker: &str, breaker: &str) -> Result<bool> {
    let spec = game.spec()?;
    let maker = with_cache(common, common.strategy(maker)?)?;
    let breaker = with_cache(common, common.strategy(breaker)?)?;
    let rec = harness::play_match(&spec, &maker, &breaker)?;
    harness::replay(&spec, &rec).context("transcript does not replay")?;
    common.emit(&match_text(&rec, common.format.unwrap_or(Format::Text))?)?;
    Ok(true)
}

/// The optimal strategy gets a solver with the configured budget and cache.
fn with_cache(common: &Common, s: AnyStrategy) -> Result<AnyStrategy> {
    Ok(match s {
        AnyStrategy::Optimal(_) => {
            AnyStrategy::Optimal(isolator_core::strategies::OptimalStrategy::with_solver(common.solver()?))
        }
        other => other,
    })
}

fn reference(spec: &GameSpec) -> Option<(String, i64)> {
    let f = |n, k| isolator_core::formula_values(n, k);
    match spec.origin {
        Origin::Cycle(n) => Some(("formula floor((n+1)/5)".into(), f(n, 0).u_cycle.into())),
        Origin::Path(n) => Some(("formula floor((n+4)/5)".into(), f(n, 0).u_path.into())),
        Origin::DelayedF { n, k } => Some(("lower bound floor((n-3k+2)/5)".into(), f(n, k).alpha_lower.into())),
        Origin::RawPosition => None,
    }
}

fn cmd_play(common: &Common, game: &GameArgs, human: Player, engine: &str) -> Result<bool> {
    let spec = game.spec()?;
    let engine = with_cache(common, common.strategy(engine)?)?;
    let stdin = io::stdin();
    let mut stdout = io::stdout();
    play::run(&spec, human, &engine, reference(&spec), stdin.lock(), &mut stdout)?;
    Ok(true)
}

fn exit_code(e: &anyhow::Error) -> u8 {
    for cause in e.chain() {
        if let Some(se) = cause.downcast_ref::<SolveError>() {
            return match se {
                SolveError::BudgetExhausted { .. } => 3,
                SolveError::Board(_) => 2,
                _ => 4,
            };
        }
        if cause.is::<Usage>() || cause.is::<BoardError>() {
            return 2;
        }
    }
    4
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let c = &cli.common;
    let result = match &cli.command {
        Command::Solve(g) => cmd_solve(c, g),
        Command::Table { n_from, n_to, formula_only } => cmd_table(c, *n_from, *n_to, *formula_only),
        Command::Verify(v) => cmd_verify(c, v),
        Command::Match { game, maker, breaker } => cmd_match(c, game, maker, breaker),
        Command::Play { game, human, engine } => cmd_play(c, game, *human, engine),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("error: one or more checks failed");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
