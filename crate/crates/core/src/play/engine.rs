//! Simulating matches between a reacher policy and an adversary.

use std::fmt;

use num_traits::{Signed, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::PlayError;
use crate::game::{Convention, PlayState, RobotGame, Turn, WinSetDescription};
use crate::numtheory::Int;

/// A reacher move source. `last_opponent` is the opponent move just played,
/// or `None` when the reacher moves first in the round.
pub trait ReacherPolicy {
    fn respond(&mut self, state: &PlayState, last_opponent: Option<&Int>) -> Result<Int, PlayError>;
}

/// Moves towards 0: minimizes `|counter + u|`, ties to the smaller move.
#[derive(Clone, Debug)]
pub struct GreedyReacher {
    game: RobotGame,
}

impl GreedyReacher {
    pub fn new(game: &RobotGame) -> Self {
        GreedyReacher { game: game.clone() }
    }
}

impl ReacherPolicy for GreedyReacher {
    fn respond(&mut self, state: &PlayState, _: Option<&Int>) -> Result<Int, PlayError> {
        let best = self.game.u().iter().min_by_key(|u| (&state.counter + *u).abs()).expect("nonempty");
        Ok(best.clone())
    }
}

/// Replays a fixed list of reacher moves.
#[derive(Clone, Debug)]
pub struct ScriptedReacher {
    moves: Vec<Int>,
    next: usize,
}

impl ScriptedReacher {
    pub fn new(moves: Vec<Int>) -> Self {
        ScriptedReacher { moves, next: 0 }
    }
}

impl ReacherPolicy for ScriptedReacher {
    fn respond(&mut self, _: &PlayState, _: Option<&Int>) -> Result<Int, PlayError> {
        let mv = self.moves.get(self.next).cloned().ok_or_else(|| PlayError::StrategyExhausted("script ended".into()))?;
        self.next += 1;
        Ok(mv)
    }
}

/// Opponent behaviours.
#[derive(Clone, Debug)]
pub enum Adversary {
    /// Uniform choice from a seeded stream.
    Random(u64),
    /// Maximizes the distance to the nearest member of the description after
    /// the reacher's best reply.
    Greedy(WinSetDescription),
    /// Every opponent choice, depth-first (small budgets only).
    Exhaustive,
    /// A fixed list of opponent moves; the match times out when it runs out.
    Scripted(Vec<Int>),
}

impl fmt::Display for Adversary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Adversary::Random(seed) => write!(f, "random({seed})"),
            Adversary::Greedy(_) => f.write_str("greedy"),
            Adversary::Exhaustive => f.write_str("exhaustive"),
            Adversary::Scripted(_) => f.write_str("scripted"),
        }
    }
}

/// A running opponent: one move at a time, for callers that drive their own
/// loop. [`Adversary::Exhaustive`] has no single-line form.
pub enum OpponentState<'a> {
    Random(Box<ChaCha8Rng>),
    Greedy(&'a WinSetDescription),
    Scripted(&'a [Int], usize),
}

impl<'a> OpponentState<'a> {
    pub fn new(adversary: &'a Adversary) -> Option<Self> {
        match adversary {
            Adversary::Random(seed) => Some(OpponentState::Random(Box::new(ChaCha8Rng::seed_from_u64(*seed)))),
            Adversary::Greedy(desc) => Some(OpponentState::Greedy(desc)),
            Adversary::Scripted(moves) => Some(OpponentState::Scripted(moves, 0)),
            Adversary::Exhaustive => None,
        }
    }

    /// The next opponent move at `counter`; `None` when a script runs out.
    pub fn choose(&mut self, game: &RobotGame, counter: &Int) -> Option<Int> {
        let moves = game.v().to_vec();
        match self {
            OpponentState::Random(rng) => moves.choose(rng.as_mut()).cloned(),
            OpponentState::Greedy(desc) => {
                let score = |v: &Int| {
                    game.u().iter().map(|u| desc.distance(&(counter + v + u))).min().expect("nonempty")
                };
                // First maximum, so ties go to the smallest move.
                let mut best: Option<(Int, &Int)> = None;
                for v in &moves {
                    let s = score(v);
                    if best.as_ref().is_none_or(|(bs, _)| &s > bs) {
                        best = Some((s, v));
                    }
                }
                best.map(|(_, v)| v.clone())
            }
            OpponentState::Scripted(moves, next) => {
                let mv = moves.get(*next).cloned();
                *next += 1;
                mv
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MatchOutcome {
    /// The reacher reached 0 after this many completed rounds.
    ReacherWin(u64),
    Timeout,
    CounterEscaped,
}

#[derive(Clone, Debug)]
pub struct MatchConfig {
    pub max_rounds: u64,
    pub convention: Convention,
    /// Stop with `CounterEscaped` once `|counter|` exceeds this.
    pub escape_radius: Option<Int>,
    /// Node cap for the exhaustive adversary.
    pub exhaustive_nodes: u64,
}

impl MatchConfig {
    pub fn rounds(max_rounds: u64) -> Self {
        MatchConfig { max_rounds, convention: Convention::OpponentFirst, escape_radius: None, exhaustive_nodes: 1 << 16 }
    }
}

/// Outcome plus the moves played, in order.
#[derive(Clone, Debug)]
pub struct MatchRecord {
    pub outcome: MatchOutcome,
    pub moves: Vec<(Turn, Int)>,
}

impl MatchRecord {
    pub fn transcript(&self) -> String {
        self.moves
            .iter()
            .map(|(t, m)| match t {
                Turn::Opponent => format!("v{m}"),
                Turn::Reacher => format!("u{m}"),
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

fn reacher_move<P: ReacherPolicy>(game: &RobotGame, reacher: &mut P, state: &PlayState, last: Option<&Int>) -> Result<Int, PlayError> {
    let u = reacher.respond(state, last)?;
    if !game.u().contains(&u) {
        return Err(PlayError::IllegalMove { side: "reacher", mv: u });
    }
    Ok(u)
}

fn escaped(cfg: &MatchConfig, counter: &Int) -> bool {
    cfg.escape_radius.as_ref().is_some_and(|r| &counter.abs() > r)
}

/// Plays one match from `x0`.
pub fn run_match<P: ReacherPolicy + Clone>(
    game: &RobotGame,
    x0: &Int,
    reacher: P,
    adversary: &Adversary,
    cfg: &MatchConfig,
) -> Result<MatchRecord, PlayError> {
    let Some(mut opponent) = OpponentState::new(adversary) else {
        return run_exhaustive(game, x0, reacher, cfg);
    };
    let mut reacher = reacher;
    let mut state = PlayState::start(x0.clone(), cfg.convention);
    let mut moves = Vec::new();
    let done = |outcome, moves| Ok(MatchRecord { outcome, moves });
    if x0.is_zero() {
        return done(MatchOutcome::ReacherWin(0), moves);
    }
    loop {
        let mut last = None;
        if state.turn == Turn::Opponent {
            if state.round_count >= cfg.max_rounds {
                return done(MatchOutcome::Timeout, moves);
            }
            let Some(v) = opponent.choose(game, &state.counter) else {
                return done(MatchOutcome::Timeout, moves);
            };
            state.apply(&v);
            moves.push((Turn::Opponent, v.clone()));
            last = Some(v);
        }
        let u = reacher_move(game, &mut reacher, &state, last.as_ref())?;
        state.apply(&u);
        moves.push((Turn::Reacher, u));
        if state.counter.is_zero() {
            return done(MatchOutcome::ReacherWin(state.round_count), moves);
        }
        if escaped(cfg, &state.counter) {
            return done(MatchOutcome::CounterEscaped, moves);
        }
    }
}

/// Depth-first over all opponent choices. Returns the worst outcome: a
/// win in the largest number of rounds, or the first non-win with its moves.
fn run_exhaustive<P: ReacherPolicy + Clone>(game: &RobotGame, x0: &Int, reacher: P, cfg: &MatchConfig) -> Result<MatchRecord, PlayError> {
    if x0.is_zero() {
        return Ok(MatchRecord { outcome: MatchOutcome::ReacherWin(0), moves: Vec::new() });
    }
    let mut nodes = 0u64;
    let mut worst = 0u64;
    let mut moves = Vec::new();
    let mut state = PlayState::start(x0.clone(), cfg.convention);
    let mut reacher = reacher;
    if cfg.convention == Convention::ReacherFirst {
        let u = reacher_move(game, &mut reacher, &state, None)?;
        state.apply(&u);
        moves.push((Turn::Reacher, u));
        if state.counter.is_zero() {
            return Ok(MatchRecord { outcome: MatchOutcome::ReacherWin(0), moves });
        }
    }
    let failure = explore(game, &state, &reacher, cfg, &mut nodes, &mut worst, &mut moves)?;
    Ok(match failure {
        Some((outcome, moves)) => MatchRecord { outcome, moves },
        None => MatchRecord { outcome: MatchOutcome::ReacherWin(worst), moves: Vec::new() },
    })
}

type Failure = Option<(MatchOutcome, Vec<(Turn, Int)>)>;

fn explore<P: ReacherPolicy + Clone>(
    game: &RobotGame,
    state: &PlayState,
    reacher: &P,
    cfg: &MatchConfig,
    nodes: &mut u64,
    worst: &mut u64,
    moves: &mut Vec<(Turn, Int)>,
) -> Result<Failure, PlayError> {
    if state.round_count >= cfg.max_rounds {
        return Ok(Some((MatchOutcome::Timeout, moves.clone())));
    }
    for v in game.v().iter() {
        *nodes += 1;
        if *nodes > cfg.exhaustive_nodes {
            return Err(PlayError::SearchTooLarge(cfg.exhaustive_nodes));
        }
        let mut next = state.clone();
        let mut policy = reacher.clone();
        next.apply(v);
        moves.push((Turn::Opponent, v.clone()));
        let u = reacher_move(game, &mut policy, &next, Some(v))?;
        next.apply(&u);
        moves.push((Turn::Reacher, u));
        if next.counter.is_zero() {
            *worst = (*worst).max(next.round_count);
        } else if escaped(cfg, &next.counter) {
            return Ok(Some((MatchOutcome::CounterEscaped, moves.clone())));
        } else if let Some(fail) = explore(game, &next, &policy, cfg, nodes, worst, moves)? {
            return Ok(Some(fail));
        }
        moves.truncate(moves.len() - 2);
    }
    Ok(None)
}
