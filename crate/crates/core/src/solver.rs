//! Computing the winning set of a robot game.
//!
//! [`solve`] runs the two-step procedure: grow a set `X` of known winning
//! values until its gcd is the gcd of the whole winning set, then either
//! conclude a full lattice or settle the bounded remainder of a half-line on
//! the restricted arena. Every value added to `X` is recorded with the move
//! answering each opponent move, for use by [`crate::play`].

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::arena::{self, ArenaError, FiniteArena, StrategyTable, Vertex};
use crate::exec::Exec;
use crate::game::{Interval, RobotGame, Sign, WinSetDescription};
use crate::numtheory::{self, Int, IntSet, NumError};

/// Candidate counts from which [`pre_with`] fans out over threads.
const PARALLEL_PRE_MIN: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("regularity interval needs a set other than {{}} and {{0}}")]
    DegenerateX,
    #[error(transparent)]
    Arena(#[from] ArenaError),
    #[error(transparent)]
    Num(#[from] NumError),
}

/// `[min V + min U, max V + max U]`.
pub fn amplitude(game: &RobotGame) -> Interval {
    Interval::new(game.min_v() + game.min_u(), game.max_v() + game.max_u())
}

/// The amplitude widened by `k` on both sides.
pub fn amplitude_k(game: &RobotGame, k: &Int) -> Interval {
    amplitude(game).widen(k)
}

/// Values from which the reacher can force the round to end in `x`.
pub fn pre(game: &RobotGame, x: &IntSet) -> IntSet {
    pre_with(game, x, Exec::default())
}

pub fn pre_with(game: &RobotGame, x: &IntSet, exec: Exec) -> IntSet {
    let mut vs = game.v().iter();
    let Some(v0) = vs.next() else { return IntSet::new() };
    let rest: Vec<&Int> = vs.collect();
    // Union for the first opponent move, then filter by the others.
    let candidates: Vec<Int> = x
        .iter()
        .flat_map(|t| game.u().iter().map(move |u| t - v0 - u))
        .collect::<IntSet>()
        .into_iter()
        .collect();
    let keep = |c: &Int| rest.iter().all(|&v| game.u().iter().any(|u| x.contains(&(c + v + u))));
    let exec = if candidates.len() >= PARALLEL_PRE_MIN { exec } else { Exec::Sequential };
    let flags = exec.map(&candidates, keep);
    candidates.into_iter().zip(flags).filter_map(|(c, k)| k.then_some(c)).collect()
}

/// `pre` of the multiples of `d` inside `interval`.
pub fn pre_lattice_window(game: &RobotGame, interval: &Interval, d: &Int) -> IntSet {
    pre(game, &interval.multiples(d))
}

/// Which bound the solver uses beyond which multiples of `gcd(X)` are known
/// to be `X`-reachable.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum BoundChoice {
    /// `max(|X|)^2 / gcd(X)`.
    #[default]
    Tilde,
    /// Sylvester's value for a coprime pair of reachable values.
    Sharp,
}

/// Signed value `T` such that every multiple of `gcd(X)` at or beyond `T`
/// (away from 0) is `X`-reachable. `X` must be nonzero and single-signed.
fn reach_threshold(nz: &IntSet, choice: BoundChoice) -> Result<Int, NumError> {
    match choice {
        BoundChoice::Tilde => numtheory::frobenius_bound(nz),
        BoundChoice::Sharp if nz.len() == 1 => Ok(Int::zero()),
        BoundChoice::Sharp => {
            let b = numtheory::sharp_frobenius_bound(nz)?;
            let d = numtheory::gcd_set(nz)?;
            Ok(if nz.all_nonnegative() { b + d } else { b - d })
        }
    }
}

/// Signed arena bound `b`: every multiple of `gcd(X)` strictly beyond it is
/// `X`-reachable.
fn arena_bound(nz: &IntSet, choice: BoundChoice) -> Result<Int, NumError> {
    match choice {
        BoundChoice::Tilde => numtheory::frobenius_bound(nz),
        BoundChoice::Sharp => numtheory::sharp_frobenius_bound(nz),
    }
}

/// The regularity interval of `x` with the default bound.
pub fn regularity_interval(game: &RobotGame, x: &IntSet) -> Result<Interval, SolveError> {
    regularity_interval_with(game, x, BoundChoice::Tilde)
}

/// A window of `gcd(X)`-multiples that are all `X`-reachable and wide enough
/// that a non-multiple winning value, if any, is found in its `pre`.
pub fn regularity_interval_with(game: &RobotGame, x: &IntSet, choice: BoundChoice) -> Result<Interval, SolveError> {
    let nz = x.nonzero();
    if nz.is_empty() {
        return Err(SolveError::DegenerateX);
    }
    let d = numtheory::gcd_set(&nz)?;
    let window = amplitude_k(game, &d);
    if nz.has_mixed_signs() {
        return Ok(window);
    }
    let t = reach_threshold(&nz, choice)?;
    let interval = if nz.all_nonnegative() {
        window.translate(&(&t - game.min_v() - game.min_u() + &d))
    } else {
        window.translate(&(&t - game.max_v() - game.max_u() - &d))
    };
    debug_assert!(if nz.all_nonnegative() { interval.lo == t } else { interval.hi == t });
    Ok(interval)
}

/// Sign-based facts readable directly off the move sets.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SignFlags {
    /// Every positive value is losing.
    pub positive_losing: bool,
    /// Every negative value is losing.
    pub negative_losing: bool,
    /// The reacher can push the counter up every round.
    pub pump_up: bool,
    /// The reacher can push the counter down every round.
    pub pump_down: bool,
}

pub fn quick_sign_checks(game: &RobotGame) -> SignFlags {
    SignFlags {
        positive_losing: game.max_v() >= &-game.min_u(),
        negative_losing: game.min_v() <= &-game.max_u(),
        pump_up: game.max_u() > &-game.min_v(),
        pump_down: game.min_u() < &-game.max_v(),
    }
}

fn min_abs_prefer_positive<'a>(it: impl Iterator<Item = &'a Int>) -> Option<&'a Int> {
    it.min_by(|a, b| a.abs().cmp(&b.abs()).then(b.cmp(a)))
}

/// A nonzero value winning in one round, or `None` when only 0 wins.
pub fn nontrivial_check(game: &RobotGame) -> Option<Int> {
    let p = pre(game, &IntSet::singleton(Int::zero()));
    min_abs_prefer_positive(p.iter().filter(|x| !x.is_zero())).cloned()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolveOptions {
    pub bound: BoundChoice,
    /// Maximum number of restricted-arena vertices.
    pub arena_limit: u64,
    pub exec: Exec,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { bound: BoundChoice::Tilde, arena_limit: arena::DEFAULT_ARENA_LIMIT, exec: Exec::default() }
    }
}

impl SolveOptions {
    pub fn sharp() -> Self {
        SolveOptions { bound: BoundChoice::Sharp, ..Self::default() }
    }
}

/// A known winning value with, for every opponent move `v`, the reacher's
/// answer `u` and the landing value `value + v + u`, which is reachable over
/// strictly earlier generators (or 0).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub value: Int,
    pub witness: BTreeMap<Int, (Int, Int)>,
}

/// Witness for a lattice obtained by pumping: from `origin` (on the losing
/// side) every opponent move `v` is answered by `phi[v]`, moving the counter
/// towards the generators by at least `|origin|` per round.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PumpWitness {
    pub sign: Sign,
    pub origin: Int,
    pub phi: BTreeMap<Int, Int>,
}

/// The restricted arena and its attractor strategy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArenaWitness {
    pub arena: FiniteArena,
    pub table: StrategyTable,
}

impl ArenaWitness {
    pub fn sign(&self) -> Sign {
        if self.arena.is_mirrored() {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessData {
    /// Generators in discovery order.
    pub generators: Vec<Generator>,
    pub step2_pump: Option<PumpWitness>,
    pub arena_strategy: Option<ArenaWitness>,
    /// For single-signed generators: the signed value from which every
    /// multiple of `d` (away from 0) is reachable over the generators.
    pub reach_threshold: Option<Int>,
    pub description: WinSetDescription,
}

/// One pass of the growing loop.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoopIteration {
    pub x: IntSet,
    pub d_prime: Int,
    pub interval: Interval,
    pub y: IntSet,
    pub picked: Option<Int>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Step2 {
    /// `X` holds values of both signs.
    MixedSigns,
    /// A value on the losing side can be pumped back.
    Pump { sign: Sign, origin: Int },
    /// Restricted arena `Restr^b_d` (signed `b`).
    Restricted { b: Int, d: Int, vertices: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveTrace {
    pub sign_flags: SignFlags,
    pub step0: IntSet,
    /// Both signs losing: answered without the loop.
    pub fast_path: bool,
    pub iterations: Vec<LoopIteration>,
    pub final_d: Option<Int>,
    pub step2: Option<Step2>,
}

#[derive(Clone, Debug)]
pub struct Solution {
    pub description: WinSetDescription,
    pub witness: WitnessData,
    pub trace: SolveTrace,
}

impl Solution {
    pub fn decide(&self, x0: &Int) -> Verdict {
        Verdict::from_bool(self.description.member(x0))
    }
}

pub fn solve(game: &RobotGame) -> Result<Solution, SolveError> {
    solve_with(game, &SolveOptions::default())
}

pub fn solve_with(game: &RobotGame, opts: &SolveOptions) -> Result<Solution, SolveError> {
    let flags = quick_sign_checks(game);
    let zero = IntSet::singleton(Int::zero());
    let step0 = pre_with(game, &zero, opts.exec).union(&zero);
    let mut trace = SolveTrace {
        sign_flags: flags,
        step0: step0.clone(),
        fast_path: false,
        iterations: Vec::new(),
        final_d: None,
        step2: None,
    };
    let trivial = |trace: SolveTrace| Solution {
        description: WinSetDescription::TrivialZero,
        witness: WitnessData {
            generators: Vec::new(),
            step2_pump: None,
            arena_strategy: None,
            reach_threshold: None,
            description: WinSetDescription::TrivialZero,
        },
        trace,
    };
    if flags.positive_losing && flags.negative_losing {
        trace.fast_path = true;
        return Ok(trivial(trace));
    }
    if step0.len() == 1 {
        return Ok(trivial(trace));
    }

    let mut generators: Vec<Generator> = step0
        .iter()
        .filter(|x| !x.is_zero())
        .map(|x| witness_for(game, x, &zero))
        .collect();

    // Grow X until its gcd is the gcd of the winning set.
    let mut x = step0;
    let d = loop {
        let d_prime = numtheory::gcd_set(&x)?;
        let interval = regularity_interval_with(game, &x, opts.bound)?;
        let targets = interval.multiples(&d_prime);
        let y = pre_with(game, &targets, opts.exec);
        let picked = min_abs_prefer_positive(y.iter().filter(|c| !c.is_multiple_of(&d_prime))).cloned();
        trace.iterations.push(LoopIteration {
            x: x.clone(),
            d_prime: d_prime.clone(),
            interval,
            y,
            picked: picked.clone(),
        });
        match picked {
            Some(p) => {
                generators.push(witness_for(game, &p, &targets));
                x.insert(p);
            }
            None => break d_prime,
        }
    };
    trace.final_d = Some(d.clone());

    let nz = x.nonzero();
    let lattice = WinSetDescription::Lattice { d: d.clone() };
    if nz.has_mixed_signs() {
        trace.step2 = Some(Step2::MixedSigns);
        return Ok(Solution {
            description: lattice.clone(),
            witness: WitnessData {
                generators,
                step2_pump: None,
                arena_strategy: None,
                reach_threshold: None,
                description: lattice,
            },
            trace,
        });
    }

    let sign = if nz.all_nonnegative() { Sign::Plus } else { Sign::Minus };
    let threshold = reach_threshold(&nz, opts.bound)?;
    let landing: IntSet = amplitude(game)
        .multiples(&d)
        .into_iter()
        .filter(|t| !sign.orient(t).is_negative())
        .collect();
    let back = pre_with(game, &landing, opts.exec);
    let origin = back.iter().filter(|p| sign.orient(p).is_negative()).min_by_key(|p| sign.orient(p)).cloned();
    if let Some(origin) = origin {
        let phi = game
            .v()
            .iter()
            .map(|v| {
                let u = game
                    .u()
                    .iter()
                    .filter(|u| landing.contains(&(&origin + v + *u)))
                    .max_by_key(|u| sign.orient(&(v + *u)))
                    .expect("origin is in pre of the landing set");
                (v.clone(), u.clone())
            })
            .collect();
        trace.step2 = Some(Step2::Pump { sign, origin: origin.clone() });
        return Ok(Solution {
            description: lattice.clone(),
            witness: WitnessData {
                generators,
                step2_pump: Some(PumpWitness { sign, origin, phi }),
                arena_strategy: None,
                reach_threshold: Some(threshold),
                description: lattice,
            },
            trace,
        });
    }

    let b = arena_bound(&nz, opts.bound)?;
    let arena = arena::build_oriented_arena(game, sign, &sign.orient(&b), &d, opts.arena_limit)?;
    let table = arena::attractor(&arena, Vertex::Opponent(0));
    trace.step2 = Some(Step2::Restricted { b: b.clone(), d: d.clone(), vertices: arena.vertex_count() as u64 });

    // Canonical form: the bound is the last losing multiple of d in the window.
    let step = i64::try_from(&d).expect("arena built");
    let mut b_star = arena.bound() - arena.bound() % step;
    while b_star > 0 && table.is_winning(&arena, Vertex::Opponent(b_star)) {
        b_star -= step;
    }
    let finite_part: IntSet = table
        .winning_values(&arena)
        .into_iter()
        .filter(|&v| v <= b_star)
        .map(|v| sign.orient(&Int::from(v)))
        .collect();
    let description = WinSetDescription::HalfLine {
        sign,
        d,
        bound: sign.orient(&Int::from(b_star)),
        finite_part,
    };
    Ok(Solution {
        description: description.clone(),
        witness: WitnessData {
            generators,
            step2_pump: None,
            arena_strategy: Some(ArenaWitness { arena, table }),
            reach_threshold: Some(threshold),
            description,
        },
        trace,
    })
}

/// Records, for each opponent move, a reacher answer from `value` landing in
/// `targets`, preferring landings closest to 0.
fn witness_for(game: &RobotGame, value: &Int, targets: &IntSet) -> Generator {
    let witness = game
        .v()
        .iter()
        .map(|v| {
            let (u, landing) = game
                .u()
                .iter()
                .map(|u| (u.clone(), value + v + u))
                .filter(|(_, l)| targets.contains(l))
                .min_by(|(ua, la), (ub, lb)| la.abs().cmp(&lb.abs()).then(ua.cmp(ub)))
                .expect("value is in pre of the targets");
            (v.clone(), (u, landing))
        })
        .collect();
    Generator { value: value.clone(), witness }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Win,
    Lose,
}

impl Verdict {
    pub fn from_bool(win: bool) -> Self {
        if win {
            Verdict::Win
        } else {
            Verdict::Lose
        }
    }

    pub fn is_win(self) -> bool {
        self == Verdict::Win
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Win => "WIN",
            Verdict::Lose => "LOSE",
        })
    }
}

pub fn decide(game: &RobotGame, x0: &Int) -> Result<Verdict, SolveError> {
    if x0.is_zero() {
        return Ok(Verdict::Win);
    }
    Ok(solve(game)?.decide(x0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(v: i64) -> Int {
        Int::from(v)
    }

    fn sample_game() -> RobotGame {
        RobotGame::from_i64s(&[-1, 0, 4], &[-1, 3]).unwrap()
    }

    #[test]
    fn amplitudes() {
        assert_eq!(amplitude(&sample_game()), Interval::from_i64s(-2, 7));
        assert_eq!(amplitude_k(&sample_game(), &int(3)), Interval::from_i64s(-5, 10));
        let zero = RobotGame::from_i64s(&[0], &[0]).unwrap();
        assert_eq!(amplitude_k(&zero, &int(0)), Interval::from_i64s(0, 0));
    }

    #[test]
    fn pre_examples() {
        assert_eq!(pre(&sample_game(), &IntSet::from([0])), IntSet::from([-3]));
        assert!(pre(&sample_game(), &IntSet::new()).is_empty());
        let window = Interval::from_i64s(-15, 0);
        assert!(pre_lattice_window(&sample_game(), &window, &int(3)).contains(&int(-2)));
        assert!(pre_lattice_window(&sample_game(), &Interval::from_i64s(1, 2), &int(3)).is_empty());
        let full = Interval::from_i64s(-2, 7);
        assert_eq!(pre_lattice_window(&sample_game(), &full, &int(1)), pre(&sample_game(), &full.values()));
    }

    #[test]
    fn pre_parallel_matches_sequential() {
        let g = RobotGame::from_i64s(&[-7, -2, 3, 5], &[-4, 1, 6]).unwrap();
        let x = Interval::from_i64s(-3000, 3000).multiples(&int(2));
        assert_eq!(pre_with(&g, &x, Exec::Sequential), pre_with(&g, &x, Exec::Parallel));
    }

    #[test]
    fn regularity_intervals() {
        assert_eq!(regularity_interval(&sample_game(), &IntSet::from([0, -3])).unwrap(), Interval::from_i64s(-15, 0));
        assert_eq!(regularity_interval(&sample_game(), &IntSet::from([-3, 2])).unwrap(), amplitude_k(&sample_game(), &int(1)));
        let zero = RobotGame::from_i64s(&[0], &[0]).unwrap();
        assert_eq!(regularity_interval(&zero, &IntSet::from([4])).unwrap(), Interval::from_i64s(0, 8));
        assert_eq!(regularity_interval(&sample_game(), &IntSet::from([0])), Err(SolveError::DegenerateX));
    }

    #[test]
    fn sign_flags() {
        assert!(quick_sign_checks(&sample_game()).positive_losing);
        assert!(quick_sign_checks(&RobotGame::from_i64s(&[5], &[-1]).unwrap()).pump_up);
        let f = quick_sign_checks(&RobotGame::from_i64s(&[-1, 1], &[-1, 1]).unwrap());
        assert!(f.positive_losing && f.negative_losing);
    }

    #[test]
    fn nontrivial() {
        assert_eq!(nontrivial_check(&sample_game()), Some(int(-3)));
        assert_eq!(nontrivial_check(&RobotGame::from_i64s(&[0], &[1, -1]).unwrap()), None);
        assert_eq!(nontrivial_check(&RobotGame::from_i64s(&[-1, 1], &[0]).unwrap()), Some(int(1)));
    }

    #[test]
    fn sample_game_solution() {
        let sol = solve(&sample_game()).unwrap();
        let expected = WinSetDescription::HalfLine {
            sign: Sign::Minus,
            d: int(1),
            bound: int(-1),
            finite_part: IntSet::from([0]),
        };
        assert_eq!(sol.description, expected);
        assert_eq!(solve_with(&sample_game(), &SolveOptions::sharp()).unwrap().description, expected);
        assert_eq!(sol.trace.step0, IntSet::from([0, -3]));
        assert_eq!(sol.trace.iterations[0].picked, Some(int(-2)));
        assert_eq!(decide(&sample_game(), &int(-3)).unwrap(), Verdict::Win);
        assert_eq!(decide(&sample_game(), &int(-1)).unwrap(), Verdict::Lose);
        assert_eq!(decide(&sample_game(), &int(0)).unwrap(), Verdict::Win);
    }

    #[test]
    fn small_solutions() {
        // The opponent's forced +1 walks every nonpositive value up to 0.
        let drift = RobotGame::from_i64s(&[0], &[1]).unwrap();
        let expected = WinSetDescription::HalfLine {
            sign: Sign::Minus,
            d: int(1),
            bound: int(0),
            finite_part: IntSet::from([0]),
        };
        let sol = solve(&drift).unwrap();
        assert_eq!(sol.description, expected);
        // A zero bound still needs the mirrored arena.
        assert_eq!(sol.witness.arena_strategy.unwrap().sign(), Sign::Minus);
        let stuck = RobotGame::from_i64s(&[0], &[-1, 1]).unwrap();
        assert_eq!(solve(&stuck).unwrap().description, WinSetDescription::TrivialZero);
        let walk = RobotGame::from_i64s(&[-1, 1], &[0]).unwrap();
        assert_eq!(solve(&walk).unwrap().description, WinSetDescription::Lattice { d: int(1) });
    }

    #[test]
    fn generator_witnesses_hold() {
        let sol = solve(&sample_game()).unwrap();
        for g in &sol.witness.generators {
            assert!(sol.description.member(&g.value));
            for (v, (u, landing)) in &g.witness {
                assert_eq!(&(&g.value + v + u), landing);
            }
        }
    }
}
