//! Playing robot games: a bounded-round oracle, a match engine for both turn
//! conventions, strategies realized from solver witnesses, and adversarial
//! certification of solver answers.

pub mod certify;
pub mod engine;
pub mod oracle;
pub mod strategy;

use thiserror::Error;

use crate::numtheory::Int;
use crate::solver::SolveError;

pub use certify::{certify, certify_with, CertifyLine, CertifyOptions, CertifyReport};
pub use engine::{run_match, Adversary, GreedyReacher, MatchConfig, MatchOutcome, MatchRecord, OpponentState, ReacherPolicy};
pub use oracle::{oracle_winset_window, win_within, win_within_target};
pub use strategy::{reacher_strategy, RealizedStrategy, Realizer, Segment, WaypointStack};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlayError {
    #[error("strategy exhausted: {0}")]
    StrategyExhausted(String),
    #[error("{0} is not in the winning set")]
    NotWinning(Int),
    #[error("illegal move {mv} for the {side}")]
    IllegalMove { side: &'static str, mv: Int },
    #[error("unsupported: {0}")]
    Unsupported(&'static str),
    #[error("exhaustive search exceeds {0} nodes")]
    SearchTooLarge(u64),
    #[error("certification failed at x={x} against {adversary} (seed {seed}): {trace}")]
    CertificationFailed { x: Int, adversary: String, trace: String, seed: u64 },
    #[error(transparent)]
    Solve(#[from] SolveError),
}
