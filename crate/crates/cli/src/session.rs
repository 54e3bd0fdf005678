//! Interactive play: a human takes one side, the engine the other.

use std::io::{BufRead, Write};

use anyhow::Result;
use num_traits::Zero;
use robot_games::game::{Convention, PlayState, Turn};
use robot_games::numtheory::{Int, IntSet};
use robot_games::play::{Adversary, GreedyReacher, MatchOutcome, MatchRecord, OpponentState, ReacherPolicy, Realizer};
use robot_games::solver::Solution;
use robot_games::RobotGame;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Role {
    Reacher,
    Opponent,
}

pub struct SessionConfig {
    /// The side the human plays.
    pub human: Role,
    pub convention: Convention,
    pub max_rounds: u64,
    /// Random engine opponent with this seed; greedy otherwise.
    pub seed: Option<u64>,
}

enum Engine<'a> {
    Reacher(Box<dyn ReacherPolicy + 'a>),
    Opponent(OpponentState<'a>),
}

/// Reads one legal move for `side` from `input`. `None` on end of input or
/// `quit`.
fn ask<R: BufRead, W: Write>(input: &mut R, out: &mut W, side: &str, legal: &IntSet) -> Result<Option<Int>> {
    loop {
        write!(out, "{side} move {legal}> ")?;
        out.flush()?;
        let mut line = String::new();
        if input.read_line(&mut line)? == 0 {
            return Ok(None);
        }
        let line = line.trim();
        if line == "q" || line == "quit" {
            return Ok(None);
        }
        match line.parse::<Int>() {
            Ok(m) if legal.contains(&m) => return Ok(Some(m)),
            Ok(m) => writeln!(out, "illegal move {m}; choose one of {legal}")?,
            Err(_) => writeln!(out, "not an integer: {line:?}")?,
        }
    }
}

/// Runs one session. Returns `None` if the human quits before the end.
pub fn run_session<R: BufRead, W: Write>(
    game: &RobotGame,
    solution: &Solution,
    x0: &Int,
    cfg: &SessionConfig,
    input: &mut R,
    out: &mut W,
) -> Result<Option<MatchRecord>> {
    let realizer = Realizer::new(game, solution)?;
    let adversary = match cfg.seed {
        Some(seed) => Adversary::Random(seed),
        None => Adversary::Greedy(solution.description.clone()),
    };
    let mut engine = match cfg.human {
        Role::Opponent => {
            let strategy = match cfg.convention {
                Convention::OpponentFirst => realizer.strategy(x0),
                Convention::ReacherFirst => realizer.strategy_reacher_first(game, x0),
            };
            match strategy {
                Ok(s) => {
                    writeln!(out, "engine plays the reacher with a winning strategy ({} rounds at most)", s.budget()?)?;
                    Engine::Reacher(Box::new(s))
                }
                Err(_) => {
                    writeln!(out, "{x0} is losing for the reacher; engine plays greedily")?;
                    Engine::Reacher(Box::new(GreedyReacher::new(game)))
                }
            }
        }
        Role::Reacher => {
            writeln!(out, "engine plays the opponent ({adversary})")?;
            Engine::Opponent(OpponentState::new(&adversary).expect("single-line adversary"))
        }
    };

    let mut state = PlayState::start(x0.clone(), cfg.convention);
    let mut moves: Vec<(Turn, Int)> = Vec::new();
    let finish = |outcome, moves| Ok(Some(MatchRecord { outcome, moves }));
    if x0.is_zero() {
        return finish(MatchOutcome::ReacherWin(0), moves);
    }
    let mut last_opponent: Option<Int> = None;
    loop {
        writeln!(out, "counter {} (round {})", state.counter, state.round_count + 1)?;
        if state.turn == Turn::Opponent {
            if state.round_count >= cfg.max_rounds {
                return finish(MatchOutcome::Timeout, moves);
            }
            let v = match &mut engine {
                Engine::Opponent(opp) => opp.choose(game, &state.counter).expect("nonempty move set"),
                _ => match ask(input, out, "opponent", game.v())? {
                    Some(v) => v,
                    None => return Ok(None),
                },
            };
            if matches!(engine, Engine::Opponent(_)) {
                writeln!(out, "opponent plays {v}")?;
            }
            state.apply(&v);
            moves.push((Turn::Opponent, v.clone()));
            last_opponent = Some(v);
        } else {
            let u = match &mut engine {
                Engine::Reacher(policy) => {
                    let u = policy.respond(&state, last_opponent.as_ref())?;
                    writeln!(out, "reacher plays {u}")?;
                    u
                }
                _ => match ask(input, out, "reacher", game.u())? {
                    Some(u) => u,
                    None => return Ok(None),
                },
            };
            state.apply(&u);
            moves.push((Turn::Reacher, u));
            last_opponent = None;
            if state.reacher_won() {
                return finish(MatchOutcome::ReacherWin(state.round_count), moves);
            }
        }
    }
}
