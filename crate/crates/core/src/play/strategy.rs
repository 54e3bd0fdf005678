//! Reacher strategies realized from solver witnesses.
//!
//! The reacher keeps a stack of segments whose values sum to the counter and
//! lets the top segment answer each opponent move:
//! - a generator token answers from the generator's witness and is replaced
//!   by a decomposition of the landing over earlier generators;
//! - an arena segment follows the attractor strategy of the restricted arena
//!   and turns into tokens when it leaves the window on a multiple of `d`;
//! - a pump segment pushes the counter past the reachability threshold.
//!
//! Every segment has a round budget, and the budget of a stack bounds the
//! number of rounds any play following it can take.

use std::collections::{BTreeMap, HashMap};

use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::engine::ReacherPolicy;
use super::PlayError;
use crate::arena::{ReacherChoice, Vertex};
use crate::game::{PlayState, RobotGame, Sign, WinSetDescription};
use crate::numtheory::{self, Int, IntSet, MinCostTable};
use crate::solver::{ArenaWitness, PumpWitness, Solution};

/// Multiplicities per generator index.
pub type Plan = Vec<(usize, u128)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Segment {
    /// `count` copies of a generator.
    Tokens { generator: usize, count: u128 },
    /// A value inside the restricted arena window.
    Arena { rel: Int },
    /// A value to be pumped towards the generators.
    Pump { rel: Int },
}

/// Pending segments, bottom first.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WaypointStack {
    segments: Vec<Segment>,
}

impl WaypointStack {
    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn is_empty(&self) -> bool {
        self.segments.is_empty()
    }

    /// `top` is played first, then `self`.
    pub fn below(mut self, top: WaypointStack) -> WaypointStack {
        self.segments.extend(top.segments);
        self
    }

    fn push_plan(&mut self, plan: &Plan) {
        for &(generator, count) in plan {
            self.segments.push(Segment::Tokens { generator, count });
        }
    }
}

struct GenInfo {
    value: Int,
    cost: u128,
    /// Opponent move to (answer, plan for the landing).
    answers: BTreeMap<Int, (Int, Plan)>,
}

struct ArenaPlan<'a> {
    w: &'a ArenaWitness,
    sign: Sign,
    /// Round budget per window value; `u64::MAX` off the attractor.
    rounds: Vec<u64>,
}

struct PumpPlan<'a> {
    w: &'a PumpWitness,
    /// Oriented threshold from which every multiple of `d` is a sum of generators.
    reach: Int,
    d: Int,
    /// Rounds between counter values divisible by `d`.
    m: Int,
    delta_min: Int,
    exit_cost: u128,
}

/// Strategy data derived from a [`Solution`].
pub struct Realizer<'a> {
    description: &'a WinSetDescription,
    gens: Vec<GenInfo>,
    gen_set: IntSet,
    table: Option<MinCostTable>,
    arena: Option<ArenaPlan<'a>>,
    pump: Option<PumpPlan<'a>>,
}

fn exhausted(msg: impl Into<String>) -> PlayError {
    PlayError::StrategyExhausted(msg.into())
}

fn to_i64(x: &Int) -> Result<i64, PlayError> {
    x.to_i64().ok_or_else(|| exhausted(format!("{x} exceeds the arena range")))
}

fn plan_cost(plan: &Plan, costs: &[u128]) -> Result<u128, PlayError> {
    plan.iter().try_fold(0u128, |acc, &(i, c)| {
        c.checked_mul(costs[i]).and_then(|x| acc.checked_add(x)).ok_or_else(|| exhausted("budget overflows u128"))
    })
}

fn counts_to_plan(counts: &[u64]) -> Plan {
    counts.iter().enumerate().filter(|(_, &c)| c > 0).map(|(i, &c)| (i, c as u128)).collect()
}

/// Cheapest decompositions of `targets` over `values` (weighted by `costs`),
/// falling back to an arbitrary decomposition for values out of table range.
fn plans_over(values: &[Int], costs: &[u128], targets: &[Int]) -> Result<Vec<(Plan, u128)>, PlayError> {
    let small: Option<(Vec<i64>, Vec<i64>)> = values
        .iter()
        .map(Int::to_i64)
        .collect::<Option<Vec<_>>>()
        .zip(targets.iter().map(Int::to_i64).collect::<Option<Vec<_>>>());
    if let Some((vals, ts)) = small {
        let lo = ts.iter().copied().min().unwrap_or(0);
        let hi = ts.iter().copied().max().unwrap_or(0);
        let weights: Vec<u64> = costs.iter().map(|&c| u64::try_from(c).unwrap_or(u64::MAX)).collect();
        if let Some(table) = MinCostTable::build(&vals, &weights, lo, hi) {
            return ts
                .iter()
                .map(|&t| {
                    let plan = counts_to_plan(&table.decompose(t).ok_or_else(|| exhausted(format!("{t} is not a sum of generators")))?);
                    let cost = plan_cost(&plan, costs)?;
                    Ok((plan, cost))
                })
                .collect();
        }
    }
    let set: IntSet = values.iter().cloned().collect();
    let index: HashMap<&Int, usize> = values.iter().enumerate().map(|(i, v)| (v, i)).collect();
    targets
        .iter()
        .map(|t| {
            if t.is_zero() {
                return Ok((Vec::new(), 0));
            }
            let dec = numtheory::decompose(&set, t).ok_or_else(|| exhausted(format!("{t} is not a sum of generators")))?;
            let plan = dec
                .terms()
                .map(|(g, c)| Ok((index[g], c.to_u128().ok_or_else(|| exhausted("multiplicity overflows u128"))?)))
                .collect::<Result<Plan, PlayError>>()?;
            let cost = plan_cost(&plan, costs)?;
            Ok((plan, cost))
        })
        .collect()
}

/// Values the shared token table answers directly.
const TOKEN_TABLE_RADIUS: i64 = 1 << 20;

impl<'a> Realizer<'a> {
    pub fn new(game: &RobotGame, solution: &'a Solution) -> Result<Self, PlayError> {
        let witness = &solution.witness;
        let mut gens: Vec<GenInfo> = Vec::with_capacity(witness.generators.len());
        for g in &witness.generators {
            let values: Vec<Int> = gens.iter().map(|g| g.value.clone()).collect();
            let costs: Vec<u128> = gens.iter().map(|g| g.cost).collect();
            let landings: Vec<Int> = g.witness.values().map(|(_, l)| l.clone()).collect();
            let plans = plans_over(&values, &costs, &landings)?;
            let cost = 1 + plans.iter().map(|(_, c)| *c).max().unwrap_or(0);
            let answers = g.witness.iter().zip(plans).map(|((v, (u, _)), (plan, _))| (v.clone(), (u.clone(), plan))).collect();
            gens.push(GenInfo { value: g.value.clone(), cost, answers });
        }
        let gen_set: IntSet = gens.iter().map(|g| g.value.clone()).collect();
        let table = Self::token_table(game, &gens, solution);
        let mut realizer = Realizer {
            description: &solution.description,
            gens,
            gen_set,
            table,
            arena: None,
            pump: None,
        };
        if let Some(w) = &witness.arena_strategy {
            realizer.arena = Some(realizer.arena_plan(w)?);
        }
        if let (Some(w), Some(reach)) = (&witness.step2_pump, &witness.reach_threshold) {
            realizer.pump = Some(realizer.pump_plan(w, reach)?);
        }
        Ok(realizer)
    }

    fn token_table(game: &RobotGame, gens: &[GenInfo], solution: &Solution) -> Option<MinCostTable> {
        let values: Vec<i64> = gens.iter().map(|g| g.value.to_i64()).collect::<Option<_>>()?;
        if values.is_empty() {
            return None;
        }
        let costs: Vec<u64> = gens.iter().map(|g| u64::try_from(g.cost).unwrap_or(u64::MAX)).collect();
        let widest = values.iter().map(|v| v.unsigned_abs()).max()? as i64;
        let moves = game.max_abs_move().to_i64()?;
        let arena = solution.witness.arena_strategy.as_ref().map_or(0, |w| w.arena.bound());
        let reach = solution.witness.reach_threshold.as_ref().and_then(Int::to_i64).map_or(0, i64::abs);
        let radius = (arena.max(reach) + 4 * moves + 64 * widest).clamp(1024, TOKEN_TABLE_RADIUS);
        let lo = if values.iter().all(|&v| v > 0) { 0 } else { -radius };
        let hi = if values.iter().all(|&v| v < 0) { 0 } else { radius };
        MinCostTable::build(&values, &costs, lo, hi)
    }

    fn costs(&self) -> Vec<u128> {
        self.gens.iter().map(|g| g.cost).collect()
    }

    /// Decomposition of `x` over all generators with its round cost.
    fn tokens(&self, x: &Int) -> Result<(Plan, u128), PlayError> {
        if let (Some(table), Some(small)) = (&self.table, x.to_i64()) {
            if table.covers(small) {
                let counts = table.decompose(small).ok_or_else(|| exhausted(format!("{x} is not a sum of generators")))?;
                let plan = counts_to_plan(&counts);
                let cost = plan_cost(&plan, &self.costs())?;
                return Ok((plan, cost));
            }
        }
        let values: Vec<Int> = self.gens.iter().map(|g| g.value.clone()).collect();
        let mut plans = plans_over(&values, &self.costs(), std::slice::from_ref(x))?;
        Ok(plans.pop().expect("one target"))
    }

    fn arena_plan(&self, w: &'a ArenaWitness) -> Result<ArenaPlan<'a>, PlayError> {
        let (arena, table) = (&w.arena, &w.table);
        let sign = w.sign();
        let b = arena.bound();
        let mut order: Vec<(u32, i64)> =
            (0..=b).filter_map(|x| table.rank(arena, Vertex::Opponent(x)).map(|r| (r, x))).collect();
        order.sort_unstable();
        let mut rounds = vec![u64::MAX; b as usize + 1];
        let mut exits: HashMap<i64, u128> = HashMap::new();
        for (_, x) in order {
            if x == 0 {
                rounds[0] = 0;
                continue;
            }
            let mut worst = 0u64;
            for &va in arena.v() {
                let y = x + va;
                let after = match table.choice(arena, y).ok_or_else(|| exhausted(format!("arena value {y} has no move")))? {
                    ReacherChoice::Window { next: 0, .. } => 0,
                    ReacherChoice::Window { next, .. } => rounds[next as usize],
                    ReacherChoice::HighWin { u } => {
                        let z = y + u;
                        let cost = match exits.get(&z) {
                            Some(&c) => c,
                            None => {
                                let c = self.tokens(&sign.orient(&Int::from(z)))?.1;
                                exits.insert(z, c);
                                c
                            }
                        };
                        u64::try_from(cost).map_err(|_| exhausted("arena budget overflows u64"))?
                    }
                };
                debug_assert!(after != u64::MAX, "strategy leaves the attractor");
                worst = worst.max(after);
            }
            rounds[x as usize] = worst.checked_add(1).ok_or_else(|| exhausted("arena budget overflows u64"))?;
        }
        Ok(ArenaPlan { w, sign, rounds })
    }

    fn pump_plan(&self, w: &'a PumpWitness, reach: &Int) -> Result<PumpPlan<'a>, PlayError> {
        let d = self.description.period();
        let sign = w.sign;
        let deltas: Vec<Int> = w.phi.iter().map(|(v, u)| sign.orient(&(v + u))).collect();
        let delta_min = deltas.iter().min().cloned().ok_or_else(|| exhausted("empty pump"))?;
        let delta_max = deltas.iter().max().cloned().expect("nonempty");
        if delta_min <= Int::zero() {
            return Err(exhausted("pump does not move the counter"));
        }
        let m = &d / d.gcd(&w.origin);
        let reach = sign.orient(reach);
        let first = Integer::div_ceil(&reach, &d) * &d;
        let end = &reach + &m * &delta_max;
        let mut exit_cost = 0u128;
        let mut w_val = first;
        while w_val < end {
            if !w_val.is_zero() {
                exit_cost = exit_cost.max(self.tokens(&sign.orient(&w_val))?.1);
            }
            w_val += &d;
        }
        Ok(PumpPlan { w, reach, d, m, delta_min, exit_cost })
    }

    /// Per-generator round costs, in generator order.
    pub fn generator_costs(&self) -> Vec<u128> {
        self.costs()
    }

    pub fn generators(&self) -> Vec<Int> {
        self.gens.iter().map(|g| g.value.clone()).collect()
    }

    /// Vertices of the restricted arena, 0 without one.
    pub fn arena_vertices(&self) -> u64 {
        self.arena.as_ref().map_or(0, |a| a.w.arena.vertex_count() as u64)
    }

    fn pump_budget(&self, rel: &Int) -> Result<u128, PlayError> {
        let p = self.pump.as_ref().ok_or_else(|| exhausted("no pump witness"))?;
        let oc = p.w.sign.orient(rel);
        let need = if oc >= p.reach { Int::zero() } else { Integer::div_ceil(&(&p.reach - &oc), &p.delta_min) };
        let r = Integer::div_ceil(&need, &p.m) * &p.m;
        r.to_u128().and_then(|r| r.checked_add(p.exit_cost)).ok_or_else(|| exhausted("budget overflows u128"))
    }

    fn segment_budget(&self, seg: &Segment) -> Result<u128, PlayError> {
        match seg {
            Segment::Tokens { generator, count } => {
                count.checked_mul(self.gens[*generator].cost).ok_or_else(|| exhausted("budget overflows u128"))
            }
            Segment::Arena { rel } => {
                let a = self.arena.as_ref().ok_or_else(|| exhausted("no arena witness"))?;
                let r = a.rounds[to_i64(&a.sign.orient(rel))? as usize];
                if r == u64::MAX {
                    return Err(exhausted(format!("{rel} is off the attractor")));
                }
                Ok(r as u128)
            }
            Segment::Pump { rel } => self.pump_budget(rel),
        }
    }

    /// Upper bound on the rounds needed to finish `stack`.
    pub fn budget(&self, stack: &WaypointStack) -> Result<u128, PlayError> {
        stack.segments.iter().try_fold(0u128, |acc, s| {
            acc.checked_add(self.segment_budget(s)?).ok_or_else(|| exhausted("budget overflows u128"))
        })
    }

    pub fn segment_value(&self, seg: &Segment) -> Int {
        match seg {
            Segment::Tokens { generator, count } => &self.gens[*generator].value * Int::from(*count),
            Segment::Arena { rel } | Segment::Pump { rel } => rel.clone(),
        }
    }

    /// Counter value the stack accounts for.
    pub fn value(&self, stack: &WaypointStack) -> Int {
        stack.segments.iter().map(|s| self.segment_value(s)).sum()
    }

    /// Counter values reached as the segments complete, top first, ending at 0.
    pub fn waypoints(&self, stack: &WaypointStack) -> Vec<Int> {
        let mut left = self.value(stack);
        stack
            .segments
            .iter()
            .rev()
            .map(|s| {
                left -= self.segment_value(s);
                left.clone()
            })
            .collect()
    }

    fn token_stack(&self, x: &Int) -> Result<WaypointStack, PlayError> {
        let mut stack = WaypointStack::default();
        stack.push_plan(&self.tokens(x)?.0);
        Ok(stack)
    }

    /// A stack for the opponent-first game from `x0`.
    pub fn plan(&self, x0: &Int) -> Result<WaypointStack, PlayError> {
        if x0.is_zero() {
            return Ok(WaypointStack::default());
        }
        if !self.description.member(x0) {
            return Err(PlayError::NotWinning(x0.clone()));
        }
        let single = |seg| WaypointStack { segments: vec![seg] };
        match self.description {
            WinSetDescription::TrivialZero => unreachable!("only 0 wins"),
            WinSetDescription::Lattice { .. } => {
                if self.pump.is_some() && !numtheory::reachable(&self.gen_set, x0) {
                    Ok(single(Segment::Pump { rel: x0.clone() }))
                } else {
                    self.token_stack(x0)
                }
            }
            WinSetDescription::HalfLine { .. } => {
                let a = self.arena.as_ref().ok_or_else(|| exhausted("no arena witness"))?;
                let oriented = a.sign.orient(x0);
                if oriented <= Int::from(a.w.arena.bound()) {
                    Ok(single(Segment::Arena { rel: x0.clone() }))
                } else {
                    self.token_stack(x0)
                }
            }
        }
    }

    /// Plays `x` to completion, then `y`: a stack for `x + y`.
    pub fn compose(&self, x: &Int, y: &Int) -> Result<WaypointStack, PlayError> {
        Ok(self.plan(y)?.below(self.plan(x)?))
    }

    /// Answers opponent move `v`, updating `stack`.
    pub fn respond(&self, stack: &mut WaypointStack, v: &Int) -> Result<Int, PlayError> {
        let top = stack.segments.pop().ok_or_else(|| exhausted("no segments left"))?;
        match top {
            Segment::Tokens { generator, count } => {
                if count > 1 {
                    stack.segments.push(Segment::Tokens { generator, count: count - 1 });
                }
                let (u, plan) = self.gens[generator].answers.get(v).ok_or_else(|| exhausted(format!("{v} is not an opponent move")))?;
                stack.push_plan(plan);
                Ok(u.clone())
            }
            Segment::Arena { rel } => {
                let a = self.arena.as_ref().ok_or_else(|| exhausted("no arena witness"))?;
                let y = to_i64(&a.sign.orient(&rel))? + to_i64(&a.sign.orient(v))?;
                let choice = a.w.table.choice(&a.w.arena, y).ok_or_else(|| exhausted(format!("no arena move at {y}")))?;
                match choice {
                    ReacherChoice::Window { u, next } => {
                        if next != 0 {
                            stack.segments.push(Segment::Arena { rel: a.sign.orient(&Int::from(next)) });
                        }
                        Ok(a.sign.orient(&Int::from(u)))
                    }
                    ReacherChoice::HighWin { u } => {
                        let exit = a.sign.orient(&Int::from(y + u));
                        stack.push_plan(&self.tokens(&exit)?.0);
                        Ok(a.sign.orient(&Int::from(u)))
                    }
                }
            }
            Segment::Pump { rel } => {
                let p = self.pump.as_ref().ok_or_else(|| exhausted("no pump witness"))?;
                let u = p.w.phi.get(v).ok_or_else(|| exhausted(format!("{v} is not an opponent move")))?;
                let next = rel + v + u;
                if next.is_zero() {
                } else if p.w.sign.orient(&next) >= p.reach && next.is_multiple_of(&p.d) {
                    stack.push_plan(&self.tokens(&next)?.0);
                } else {
                    stack.segments.push(Segment::Pump { rel: next });
                }
                Ok(u.clone())
            }
        }
    }

    /// Opponent-first strategy from `x0`.
    pub fn strategy(&self, x0: &Int) -> Result<RealizedStrategy<'_>, PlayError> {
        Ok(RealizedStrategy { realizer: self, stack: self.plan(x0)?, opening: None })
    }

    /// Reacher-first strategy: an opening move into the winning set, then the
    /// opponent-first strategy from there.
    pub fn strategy_reacher_first(&self, game: &RobotGame, x0: &Int) -> Result<RealizedStrategy<'_>, PlayError> {
        let mut best: Option<(u128, Int, WaypointStack)> = None;
        for u in game.u().iter() {
            let y = x0 + u;
            if !self.description.member(&y) {
                continue;
            }
            let stack = self.plan(&y)?;
            let cost = self.budget(&stack)?;
            if best.as_ref().is_none_or(|(c, _, _)| cost < *c) {
                best = Some((cost, u.clone(), stack));
            }
        }
        let (_, u, stack) = best.ok_or_else(|| PlayError::NotWinning(x0.clone()))?;
        Ok(RealizedStrategy { realizer: self, stack, opening: Some(u) })
    }
}

/// A [`Realizer`] together with the reacher's current stack.
#[derive(Clone)]
pub struct RealizedStrategy<'r> {
    realizer: &'r Realizer<'r>,
    stack: WaypointStack,
    opening: Option<Int>,
}

impl<'r> RealizedStrategy<'r> {
    pub fn with_stack(realizer: &'r Realizer<'r>, stack: WaypointStack) -> Self {
        RealizedStrategy { realizer, stack, opening: None }
    }

    pub fn stack(&self) -> &WaypointStack {
        &self.stack
    }

    /// Rounds left in the worst case.
    pub fn budget(&self) -> Result<u128, PlayError> {
        self.realizer.budget(&self.stack)
    }
}

impl ReacherPolicy for RealizedStrategy<'_> {
    fn respond(&mut self, _: &PlayState, last_opponent: Option<&Int>) -> Result<Int, PlayError> {
        match last_opponent {
            Some(v) => self.realizer.respond(&mut self.stack, v),
            None => self.opening.take().ok_or(PlayError::Unsupported("a second reacher move without an opponent move")),
        }
    }
}

/// Functional form of one step: the answer to `v` in `state` and the stack
/// after it.
pub fn reacher_strategy(
    realizer: &Realizer<'_>,
    state: &PlayState,
    v: &Int,
    stack: &WaypointStack,
) -> Result<(Int, WaypointStack), PlayError> {
    debug_assert_eq!(realizer.value(stack) + v, state.counter, "stack out of sync with the counter");
    let mut next = stack.clone();
    let u = realizer.respond(&mut next, v)?;
    Ok((u, next))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::Convention;
    use crate::play::engine::{run_match, Adversary, MatchConfig, MatchOutcome};
    use crate::solver::{self, SolveOptions};

    fn int(v: i64) -> Int {
        Int::from(v)
    }

    fn sample_game() -> RobotGame {
        RobotGame::from_i64s(&[-1, 0, 4], &[-1, 3]).unwrap()
    }

    /// Every opponent choice against the realized strategy, checking the
    /// stack invariant and the budget.
    fn check_all_plays(game: &RobotGame, realizer: &Realizer<'_>, x0: &Int, max_nodes: u64) {
        let stack = realizer.plan(x0).unwrap();
        let budget = realizer.budget(&stack).unwrap();
        assert_eq!(realizer.value(&stack), *x0);
        let mut nodes = 0u64;
        let mut todo = vec![(x0.clone(), stack, 0u128)];
        while let Some((c, stack, rounds)) = todo.pop() {
            if c.is_zero() {
                assert!(rounds <= budget, "x0={x0}: {rounds} rounds over budget {budget}");
                continue;
            }
            assert!(rounds < budget, "x0={x0}: budget {budget} spent at counter {c}");
            assert!(realizer.budget(&stack).unwrap() <= budget - rounds);
            for v in game.v().iter() {
                nodes += 1;
                if nodes > max_nodes {
                    return;
                }
                let state = PlayState { counter: &c + v, ..PlayState::start(c.clone(), Convention::OpponentFirst) };
                let (u, next) = reacher_strategy(realizer, &state, v, &stack).unwrap();
                assert!(game.u().contains(&u));
                let after = &c + v + &u;
                assert_eq!(realizer.value(&next), after);
                todo.push((after, next, rounds + 1));
            }
        }
    }

    #[test]
    fn sample_game_plays_win_within_budget() {
        let game = sample_game();
        for opts in [SolveOptions::default(), SolveOptions::sharp()] {
            let sol = solver::solve_with(&game, &opts).unwrap();
            let r = Realizer::new(&game, &sol).unwrap();
            for x in -40..=5 {
                let x = int(x);
                if sol.description.member(&x) {
                    check_all_plays(&game, &r, &x, 200_000);
                } else {
                    assert_eq!(r.plan(&x).unwrap_err(), PlayError::NotWinning(x));
                }
            }
        }
    }

    #[test]
    fn lattice_and_pump_games() {
        // Mixed generators, a pump and a plain lattice.
        let games = [
            RobotGame::from_i64s(&[-3, 2], &[0]).unwrap(),
            RobotGame::from_i64s(&[-2, 3], &[-1, 1]).unwrap(),
            RobotGame::from_i64s(&[-5, 2], &[0, 3]).unwrap(),
        ];
        for game in &games {
            let sol = solver::solve(game).unwrap();
            let r = Realizer::new(game, &sol).unwrap();
            for x in -25..=25 {
                let x = int(x);
                if sol.description.member(&x) {
                    check_all_plays(game, &r, &x, 100_000);
                }
            }
        }
    }

    #[test]
    fn composed_stack_wins_for_the_sum() {
        let game = sample_game();
        let sol = solver::solve(&game).unwrap();
        let r = Realizer::new(&game, &sol).unwrap();
        let (x, y) = (int(-3), int(-7));
        let stack = r.compose(&x, &y).unwrap();
        assert_eq!(r.value(&stack), int(-10));
        let budget = r.budget(&stack).unwrap();
        assert_eq!(budget, r.budget(&r.plan(&x).unwrap()).unwrap() + r.budget(&r.plan(&y).unwrap()).unwrap());
        let waypoints = r.waypoints(&stack);
        assert_eq!(waypoints.last(), Some(&int(0)));
        let cfg = MatchConfig::rounds(budget as u64);
        for seed in 0..20 {
            let strategy = RealizedStrategy::with_stack(&r, stack.clone());
            let rec = run_match(&game, &int(-10), strategy, &Adversary::Random(seed), &cfg).unwrap();
            assert!(matches!(rec.outcome, MatchOutcome::ReacherWin(n) if n as u128 <= budget));
        }
    }

    #[test]
    fn reacher_first_opening() {
        let game = sample_game();
        let sol = solver::solve(&game).unwrap();
        let r = Realizer::new(&game, &sol).unwrap();
        // -1 loses opponent-first but the reacher can open with -1 to reach -2.
        let s = r.strategy_reacher_first(&game, &int(-1)).unwrap();
        let cfg = MatchConfig { convention: Convention::ReacherFirst, ..MatchConfig::rounds(50) };
        let rec = run_match(&game, &int(-1), s, &Adversary::Exhaustive, &cfg).unwrap();
        assert!(matches!(rec.outcome, MatchOutcome::ReacherWin(_)));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn game() -> impl Strategy<Value = RobotGame> {
            (prop::collection::btree_set(-5i64..=5, 1..4), prop::collection::btree_set(-5i64..=5, 1..3)).prop_map(|(u, v)| {
                let u: Vec<i64> = u.into_iter().collect();
                let v: Vec<i64> = v.into_iter().collect();
                RobotGame::from_i64s(&u, &v).unwrap()
            })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]
            #[test]
            fn realized_strategies_win(g in game(), x in -12i64..=12) {
                let sol = solver::solve(&g).unwrap();
                let r = Realizer::new(&g, &sol).unwrap();
                if sol.description.member(&int(x)) {
                    check_all_plays(&g, &r, &int(x), 20_000);
                }
            }
        }
    }
}
