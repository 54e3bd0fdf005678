mod session;

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use num_traits::Signed;

use robot_games::game::{parse_int, Convention, GameFile};
use robot_games::numtheory::{self, Int, IntSet};
use robot_games::play::{certify_with, win_within, CertifyOptions, MatchOutcome};
use robot_games::reductions::{encode_countdown_as_robot_game, gen_subset_sum, restrict_countdown, CountdownGame};
use robot_games::solver::{solve_with, SolveOptions, Verdict};
use robot_games::RobotGame;

use session::{run_session, Role, SessionConfig};

/// Solver and tools for one-dimensional robot games.
///
/// Game files are JSON objects `{"U": [...], "V": [...]}` with integers as
/// decimal strings and an optional `"x0"`.
#[derive(Parser)]
#[command(name = "robot-games", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the reacher's winning set.
    Solve {
        file: PathBuf,
        /// Use the sharper Frobenius bound for the restricted arena.
        #[arg(long)]
        sharp_bound: bool,
        #[arg(long)]
        json: bool,
    },
    /// Print WIN or LOSE for an initial counter (exit 0 or 1).
    Decide {
        file: PathBuf,
        #[arg(allow_hyphen_values = true)]
        x0: String,
    },
    /// Interactive match against the engine.
    Play {
        file: PathBuf,
        #[arg(allow_hyphen_values = true)]
        x0: String,
        /// The side you play.
        #[arg(long = "as", value_enum, default_value_t = HumanSide::Opponent)]
        side: HumanSide,
        #[arg(long)]
        reacher_first: bool,
        /// Engine opponent plays uniformly at random with this seed (greedy
        /// otherwise).
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 1000)]
        max_rounds: u64,
    },
    /// Bounded-round check: can the reacher win within K rounds?
    Oracle {
        file: PathBuf,
        #[arg(allow_hyphen_values = true)]
        x0: String,
        #[arg(long)]
        rounds: u64,
        #[arg(long)]
        reacher_first: bool,
    },
    /// Play the synthesized strategies against adversaries on the values
    /// `-N/2 .. N/2`.
    Certify {
        file: PathBuf,
        #[arg(long, default_value_t = 41)]
        samples: u32,
        #[arg(long, default_value_t = 8)]
        trials: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// One-player game that the reacher wins iff a subset of SET sums to
    /// TARGET.
    GenSubsetsum {
        #[arg(long, value_delimiter = ',', required = true)]
        set: Vec<String>,
        #[arg(long)]
        target: String,
    },
    /// Robot game encoding a countdown game (restricted first if it has no
    /// sink). The reacher moves first in the encoded game.
    GenCountdownEncoding { file: PathBuf },
    /// Gcd, Frobenius bounds and a coprime reachable pair for a same-sign set.
    Frobenius {
        #[arg(allow_hyphen_values = true, value_delimiter = ',', required = true)]
        set: Vec<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum HumanSide {
    Reacher,
    Opponent,
}

fn load_game(path: &Path) -> Result<RobotGame> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let (game, _) = GameFile::parse(&text).with_context(|| format!("parsing {}", path.display()))?;
    Ok(game)
}

fn convention(reacher_first: bool) -> Convention {
    if reacher_first {
        Convention::ReacherFirst
    } else {
        Convention::OpponentFirst
    }
}

fn parse_set(items: &[String]) -> Result<IntSet> {
    Ok(items.iter().map(|s| parse_int(s)).collect::<Result<IntSet, _>>()?)
}

fn run(cli: Cli) -> Result<ExitCode> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match cli.command {
        Command::Solve { file, sharp_bound, json } => {
            let game = load_game(&file)?;
            let opts = if sharp_bound { SolveOptions::sharp() } else { SolveOptions::default() };
            let sol = solve_with(&game, &opts)?;
            if json {
                writeln!(out, "{}", sol.description.to_json())?;
            } else {
                writeln!(out, "{}", sol.description)?;
            }
        }
        Command::Decide { file, x0 } => {
            let game = load_game(&file)?;
            let x0 = parse_int(&x0)?;
            let verdict = solve_with(&game, &SolveOptions::default())?.decide(&x0);
            writeln!(out, "{verdict}")?;
            return Ok(ExitCode::from(if verdict == Verdict::Win { 0 } else { 1 }));
        }
        Command::Play { file, x0, side, reacher_first, seed, max_rounds } => {
            let game = load_game(&file)?;
            let x0 = parse_int(&x0)?;
            let sol = solve_with(&game, &SolveOptions::default())?;
            let human = match side {
                HumanSide::Reacher => Role::Reacher,
                HumanSide::Opponent => Role::Opponent,
            };
            let cfg = SessionConfig { human, convention: convention(reacher_first), max_rounds, seed };
            let stdin = io::stdin();
            let mut input = stdin.lock();
            match run_session(&game, &sol, &x0, &cfg, &mut input, &mut out)? {
                None => writeln!(out, "\nsession abandoned")?,
                Some(record) => {
                    match record.outcome {
                        MatchOutcome::ReacherWin(r) => writeln!(out, "reacher wins after {r} rounds")?,
                        MatchOutcome::Timeout => writeln!(out, "no winner within {max_rounds} rounds")?,
                        MatchOutcome::CounterEscaped => writeln!(out, "counter escaped")?,
                    }
                    writeln!(out, "transcript: {}", record.transcript())?;
                }
            }
        }
        Command::Oracle { file, x0, rounds, reacher_first } => {
            let game = load_game(&file)?;
            let x0 = parse_int(&x0)?;
            let win = win_within(&game, &x0, rounds, reacher_first);
            writeln!(out, "{}", Verdict::from_bool(win))?;
        }
        Command::Certify { file, samples, trials, seed } => {
            let game = load_game(&file)?;
            let sol = solve_with(&game, &SolveOptions::default())?;
            let lo = -i64::from(samples / 2);
            let sample: Vec<Int> = (lo..lo + i64::from(samples)).map(Int::from).collect();
            let opts = CertifyOptions { trials, seed, ..CertifyOptions::default() };
            let report = certify_with(&game, &sol, &sample, &opts)?;
            write!(out, "{report}")?;
        }
        Command::GenSubsetsum { set, target } => {
            let (game, x0) = gen_subset_sum(&parse_set(&set)?, &parse_int(&target)?)?;
            writeln!(out, "{}", GameFile::new(&game, Some(&x0)).to_json())?;
        }
        Command::GenCountdownEncoding { file } => {
            let text = fs::read_to_string(&file).with_context(|| format!("reading {}", file.display()))?;
            let cg = CountdownGame::from_json(&text)?;
            let rcg = if cg.sink.is_some() { cg } else { restrict_countdown(&cg)? };
            let enc = encode_countdown_as_robot_game(&rcg)?;
            writeln!(out, "{}", GameFile::new(&enc.game, Some(&enc.x0)).to_json())?;
        }
        Command::Frobenius { set } => {
            let set = parse_set(&set)?;
            if set.has_mixed_signs() {
                bail!("the set must not mix signs");
            }
            let d = numtheory::gcd_set(&set)?;
            let scaled: IntSet = set.nonzero().iter().map(|x| (x / &d).abs()).collect();
            let (p, q) = numtheory::mutually_prime_pair(&scaled)?;
            writeln!(out, "gcd {d}")?;
            writeln!(out, "bound {}", numtheory::frobenius_bound(&set)?)?;
            writeln!(out, "sharp {}", numtheory::sharp_frobenius_bound(&set)?)?;
            writeln!(out, "pair {p} {q}")?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
