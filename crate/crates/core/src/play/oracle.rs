//! Bounded-round oracle: iterated `pre` from a target set.
//!
//! `X_0 = target`, `X_{i+1} = X_i ∪ pre(X_i)`. A value is in `X_k` iff the
//! reacher can force the counter into the target within `k` rounds. The
//! iteration is incremental: `S_i = X_i - U` (values from which one reacher
//! move lands in `X_i`) is grown from the newest layer only, and a value
//! joins `X` once all `|V|` opponent moves from it land in `S`.

use std::collections::{HashMap, HashSet};
use std::hash::Hash;
use std::ops::{Add, Sub};

use num_traits::{Signed, ToPrimitive, Zero};

use crate::game::{Interval, RobotGame};
use crate::numtheory::{Int, IntSet};

/// Magnitudes below this run on `i128`.
const SMALL_LIMIT: i128 = 1 << 100;

trait Value: Clone + Eq + Hash + Ord + Add<Output = Self> + Sub<Output = Self> {}
impl<T: Clone + Eq + Hash + Ord + Add<Output = T> + Sub<Output = T>> Value for T {}

struct Layers<T: Value> {
    u: Vec<T>,
    v_count: u32,
    v: Vec<T>,
    /// Values outside this window are never added to `X`.
    window: Option<(T, T)>,
    win: HashSet<T>,
    half: HashSet<T>,
    count: HashMap<T, u32>,
    frontier: Vec<T>,
    rounds: u64,
}

impl<T: Value> Layers<T> {
    fn new(u: Vec<T>, v: Vec<T>, target: Vec<T>, window: Option<(T, T)>) -> Self {
        let win: HashSet<T> = target.iter().cloned().collect();
        Layers {
            u,
            v_count: v.len() as u32,
            v,
            window,
            win,
            half: HashSet::new(),
            count: HashMap::new(),
            frontier: target,
            rounds: 0,
        }
    }

    fn in_window(&self, x: &T) -> bool {
        self.window.as_ref().is_none_or(|(lo, hi)| lo <= x && x <= hi)
    }

    fn at_fixpoint(&self) -> bool {
        self.frontier.is_empty()
    }

    /// Extends `S` with the newest layer of `X`, without counting.
    fn grow_half(&mut self) -> Vec<T> {
        let mut fresh = Vec::new();
        for x in std::mem::take(&mut self.frontier) {
            for u in &self.u {
                let y = x.clone() - u.clone();
                if self.half.insert(y.clone()) {
                    fresh.push(y);
                }
            }
        }
        fresh
    }

    /// One application of `X <- X ∪ pre(X)`.
    fn step(&mut self) {
        let fresh = self.grow_half();
        let mut next = Vec::new();
        for y in fresh {
            for v in &self.v {
                let c = y.clone() - v.clone();
                if !self.in_window(&c) || self.win.contains(&c) {
                    continue;
                }
                let n = self.count.entry(c.clone()).or_insert(0);
                *n += 1;
                if *n == self.v_count {
                    next.push(c);
                }
            }
        }
        for c in &next {
            self.count.remove(c);
            self.win.insert(c.clone());
        }
        self.frontier = next;
        self.rounds += 1;
    }

    fn run_until(&mut self, k: u64, mut done: impl FnMut(&Self) -> bool) -> bool {
        loop {
            if done(self) {
                return true;
            }
            if self.rounds >= k || self.at_fixpoint() {
                return false;
            }
            self.step();
        }
    }

    /// Whether some reacher move from `x` lands in `X`.
    fn half_contains(&self, x: &T) -> bool {
        self.u.iter().any(|u| self.win.contains(&(x.clone() + u.clone())))
    }
}

/// Counter windows outside which no play from `x0` can still win, derived
/// from rounds that strictly move the counter in one direction.
fn prune_window(game: &RobotGame, x0: &Int, reacher_first: bool) -> Option<(Int, Int)> {
    let up = game.min_v() + game.min_u();
    let down = game.max_v() + game.max_u();
    let first = |m: &Int| if reacher_first { m.clone() } else { Int::zero() };
    if down < Int::zero() {
        Some((Int::zero(), x0 + first(game.max_u()).max(Int::zero())))
    } else if up > Int::zero() {
        Some((x0 + first(game.min_u()).min(Int::zero()), Int::zero()))
    } else {
        None
    }
}

fn fits_small(values: &[Int], k: u64, span: &Int) -> bool {
    let grow = span * Int::from(k) * 2;
    let limit = Int::from(SMALL_LIMIT);
    values.iter().all(|x| x.abs() + &grow < limit)
}

struct Prepared<T: Value> {
    layers: Layers<T>,
    x0: T,
}

fn prepare<T: Value>(conv: impl Fn(&Int) -> T, game: &RobotGame, target: &IntSet, x0: &Int, window: Option<(Int, Int)>) -> Prepared<T> {
    let u = game.u().iter().map(&conv).collect();
    let v = game.v().iter().map(&conv).collect();
    let t = target.iter().map(&conv).collect();
    let w = window.map(|(lo, hi)| (conv(&lo), conv(&hi)));
    Prepared { layers: Layers::new(u, v, t, w), x0: conv(x0) }
}

fn decide_layers<T: Value>(mut p: Prepared<T>, k: u64, reacher_first: bool) -> bool {
    let x0 = p.x0.clone();
    if reacher_first {
        p.layers.run_until(k, |_| false);
        p.layers.half_contains(&x0)
    } else {
        p.layers.run_until(k, |l| l.win.contains(&x0))
    }
}

/// Whether the reacher can force the counter from `x0` into `target` within
/// `k` rounds. With `reacher_first`, the reacher moves before the first
/// opponent move and wins if that first move already lands in the target.
pub fn win_within_target(game: &RobotGame, target: &IntSet, x0: &Int, k: u64, reacher_first: bool) -> bool {
    if target.contains(x0) {
        return true;
    }
    let window = if target == &IntSet::singleton(Int::zero()) { prune_window(game, x0, reacher_first) } else { None };
    if let Some((lo, hi)) = &window {
        if lo > hi {
            return false;
        }
    }
    let span = game.max_abs_move() * 2;
    let mut all: Vec<Int> = game.u().iter().chain(game.v().iter()).chain(target.iter()).cloned().collect();
    all.push(x0.clone());
    if let Some((lo, hi)) = &window {
        all.push(lo.clone());
        all.push(hi.clone());
    }
    if fits_small(&all, k, &span) {
        let conv = |x: &Int| x.to_i128().expect("checked");
        decide_layers(prepare(conv, game, target, x0, window), k, reacher_first)
    } else {
        decide_layers(prepare(Int::clone, game, target, x0, window), k, reacher_first)
    }
}

/// Whether the reacher can force the counter from `x0` to 0 within `k`
/// rounds.
pub fn win_within(game: &RobotGame, x0: &Int, k: u64, reacher_first: bool) -> bool {
    win_within_target(game, &IntSet::singleton(Int::zero()), x0, k, reacher_first)
}

/// `X_k ∩ window` for the target `{0}`, opponent first.
pub fn oracle_winset_window(game: &RobotGame, window: &Interval, k: u64) -> IntSet {
    let span = game.max_abs_move() * 2;
    let mut all: Vec<Int> = game.u().iter().chain(game.v().iter()).cloned().collect();
    all.push(window.lo.clone());
    all.push(window.hi.clone());
    let collect = |win: Vec<Int>| win.into_iter().filter(|x| window.contains(x)).collect::<IntSet>();
    let zero = IntSet::singleton(Int::zero());
    if fits_small(&all, k, &span) {
        let conv = |x: &Int| x.to_i128().expect("checked");
        let mut p = prepare(conv, game, &zero, &Int::zero(), None);
        p.layers.run_until(k, |_| false);
        collect(p.layers.win.into_iter().map(Int::from).collect())
    } else {
        let mut p = prepare(Int::clone, game, &zero, &Int::zero(), None);
        p.layers.run_until(k, |_| false);
        collect(p.layers.win.into_iter().collect())
    }
}
