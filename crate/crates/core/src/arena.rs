//! The finite restricted arena and attractor computation on it.
//!
//! `Restr^b_d(U, V)` truncates a robot game to the window `[0, b]` of counter
//! values at the start of a round. Leaving the window goes to one of three
//! sinks: below 0 (lost), above `b` on a multiple of `d` (won, one edge back
//! to the target), above `b` elsewhere (lost). Vertices are implicit: a side
//! tag plus a counter value, with successors and predecessors computed on
//! demand.

use std::collections::VecDeque;
use std::fmt::Write as _;

use num_traits::{Signed, ToPrimitive};
use thiserror::Error;

use crate::game::{RobotGame, Sign};
use crate::numtheory::{Int, IntSet};

/// Default cap on the number of arena vertices.
pub const DEFAULT_ARENA_LIMIT: u64 = 1 << 25;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArenaError {
    #[error("reacher range [{lo}, {hi}] is empty")]
    InvalidBound { lo: i64, hi: i64 },
    #[error("arena would have {vertices} vertices (limit {limit})")]
    ArenaTooLarge { vertices: String, limit: u64 },
    #[error("period must be positive")]
    BadPeriod,
}

/// A vertex of the restricted arena.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Vertex {
    /// Round start, opponent to move, counter in `[0, b]`.
    Opponent(i64),
    /// Reacher to move, counter in `[min V, b + max V]`.
    Reacher(i64),
    NegLose,
    HighWin,
    HighLose,
}

impl Vertex {
    pub fn label(&self) -> String {
        match self {
            Vertex::Opponent(x) => format!("opp:{x}"),
            Vertex::Reacher(y) => format!("rea:{y}"),
            Vertex::NegLose => "neg_lose".into(),
            Vertex::HighWin => "high_win".into(),
            Vertex::HighLose => "high_lose".into(),
        }
    }

    fn reacher_owned(&self) -> bool {
        matches!(self, Vertex::Reacher(_))
    }
}

/// `Restr^b_d` for `b >= 0`. Arenas for negative bounds are built on the
/// mirrored game; `mirrored` records this so results can be mapped back.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteArena {
    u: Vec<i64>,
    v: Vec<i64>,
    b: i64,
    d: i64,
    mirrored: bool,
}

impl FiniteArena {
    pub fn bound(&self) -> i64 {
        self.b
    }

    pub fn period(&self) -> i64 {
        self.d
    }

    pub fn is_mirrored(&self) -> bool {
        self.mirrored
    }

    /// Reacher moves in arena coordinates.
    pub fn u(&self) -> &[i64] {
        &self.u
    }

    /// Opponent moves in arena coordinates.
    pub fn v(&self) -> &[i64] {
        &self.v
    }

    fn reacher_lo(&self) -> i64 {
        self.v[0]
    }

    fn reacher_hi(&self) -> i64 {
        self.b + self.v[self.v.len() - 1]
    }

    pub fn opponent_count(&self) -> usize {
        self.b as usize + 1
    }

    pub fn reacher_count(&self) -> usize {
        (self.reacher_hi() - self.reacher_lo() + 1) as usize
    }

    /// Total number of vertices, sinks included.
    pub fn vertex_count(&self) -> usize {
        self.opponent_count() + self.reacher_count() + 3
    }

    pub fn id(&self, vertex: Vertex) -> usize {
        let base = self.opponent_count() + self.reacher_count();
        match vertex {
            Vertex::Opponent(x) => {
                debug_assert!((0..=self.b).contains(&x));
                x as usize
            }
            Vertex::Reacher(y) => {
                debug_assert!((self.reacher_lo()..=self.reacher_hi()).contains(&y));
                self.opponent_count() + (y - self.reacher_lo()) as usize
            }
            Vertex::NegLose => base,
            Vertex::HighWin => base + 1,
            Vertex::HighLose => base + 2,
        }
    }

    pub fn vertex(&self, id: usize) -> Vertex {
        let opp = self.opponent_count();
        let rea = self.reacher_count();
        if id < opp {
            Vertex::Opponent(id as i64)
        } else if id < opp + rea {
            Vertex::Reacher(self.reacher_lo() + (id - opp) as i64)
        } else {
            match id - opp - rea {
                0 => Vertex::NegLose,
                1 => Vertex::HighWin,
                _ => Vertex::HighLose,
            }
        }
    }

    /// Where the reacher lands from `y` when playing `u`.
    pub fn reacher_step(&self, y: i64, u: i64) -> Vertex {
        let z = y + u;
        if z < 0 {
            Vertex::NegLose
        } else if z <= self.b {
            Vertex::Opponent(z)
        } else if z % self.d == 0 {
            Vertex::HighWin
        } else {
            Vertex::HighLose
        }
    }

    pub fn successors(&self, vertex: Vertex) -> Vec<Vertex> {
        match vertex {
            Vertex::Opponent(x) => self.v.iter().map(|v| Vertex::Reacher(x + v)).collect(),
            Vertex::Reacher(y) => {
                let mut out: Vec<Vertex> = Vec::with_capacity(self.u.len());
                for &u in &self.u {
                    let next = self.reacher_step(y, u);
                    if !out.contains(&next) {
                        out.push(next);
                    }
                }
                out
            }
            Vertex::HighWin => vec![Vertex::Opponent(0)],
            sink => vec![sink],
        }
    }

    /// Predecessors paired with the reacher move realizing the edge, when
    /// the predecessor is a reacher vertex.
    fn predecessors(&self, vertex: Vertex, out: &mut Vec<(Vertex, Option<usize>)>) {
        out.clear();
        let (lo, hi) = (self.reacher_lo(), self.reacher_hi());
        match vertex {
            Vertex::Opponent(x) => {
                for (i, &u) in self.u.iter().enumerate() {
                    let y = x - u;
                    if (lo..=hi).contains(&y) {
                        out.push((Vertex::Reacher(y), Some(i)));
                    }
                }
                if x == 0 {
                    out.push((Vertex::HighWin, None));
                }
            }
            Vertex::Reacher(y) => {
                for &v in &self.v {
                    let x = y - v;
                    if (0..=self.b).contains(&x) {
                        out.push((Vertex::Opponent(x), None));
                    }
                }
            }
            sink => {
                // Reacher vertices with some move into the sink.
                for y in lo..=hi {
                    if let Some(i) = self.u.iter().position(|&u| self.reacher_step(y, u) == sink) {
                        out.push((Vertex::Reacher(y), Some(i)));
                    }
                }
                if sink != Vertex::HighWin {
                    out.push((sink, None));
                }
            }
        }
    }

    /// Line-oriented adjacency dump: `vertex TAB side TAB successors...`.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for id in 0..self.vertex_count() {
            let vertex = self.vertex(id);
            let side = if vertex.reacher_owned() { "reacher" } else { "opponent" };
            let succ: Vec<String> = self.successors(vertex).iter().map(Vertex::label).collect();
            writeln!(out, "{}\t{}\t{}", vertex.label(), side, succ.join(" ")).expect("string write");
        }
        out
    }
}

/// Builds `Restr^b_d(U, V)`; a negative `b` builds `Restr^{-b}_d(-U, -V)`.
pub fn build_restricted_arena(game: &RobotGame, b: &Int, d: &Int, limit: u64) -> Result<FiniteArena, ArenaError> {
    let sign = if b.is_negative() { Sign::Minus } else { Sign::Plus };
    build_oriented_arena(game, sign, &sign.orient(b), d, limit)
}

/// Builds the arena for the half-line pointing to `sign`, with oriented bound
/// `b >= 0`. Unlike [`build_restricted_arena`] this keeps the orientation
/// when `b` is 0.
pub fn build_oriented_arena(game: &RobotGame, sign: Sign, b: &Int, d: &Int, limit: u64) -> Result<FiniteArena, ArenaError> {
    if !d.is_positive() {
        return Err(ArenaError::BadPeriod);
    }
    if b.is_negative() {
        return Err(ArenaError::InvalidBound { lo: 0, hi: -1 });
    }
    let mirrored = sign == Sign::Minus;
    let game = if mirrored { game.mirror() } else { game.clone() };
    let b = b.clone();
    let span = game.max_v() - game.min_v();
    let vertices: Int = &b * 2 + &span + 5;
    let too_large = || ArenaError::ArenaTooLarge { vertices: vertices.to_string(), limit };
    if vertices > Int::from(limit) {
        return Err(too_large());
    }
    let (u, v) = game.small_moves().ok_or_else(too_large)?;
    let b = b.to_i64().ok_or_else(too_large)?;
    let d = d.to_i64().ok_or_else(too_large)?;
    let (lo, hi) = (v[0], b + v[v.len() - 1]);
    if lo > hi {
        return Err(ArenaError::InvalidBound { lo, hi });
    }
    Ok(FiniteArena { u, v, b, d, mirrored })
}

/// A move of the reacher prescribed by a [`StrategyTable`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReacherChoice {
    /// Play `u`, staying in the window at opponent vertex `next`.
    Window { u: i64, next: i64 },
    /// Play `u`, leaving the window above `b` on a multiple of `d`.
    HighWin { u: i64 },
}

/// Memoryless strategy and ranks from an attractor computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrategyTable {
    rank: Vec<u32>,
    choice: Vec<u32>,
}

const UNRANKED: u32 = u32::MAX;

impl StrategyTable {
    /// Attractor rank (steps to the target along the strategy), or `None`
    /// for vertices outside the attractor.
    pub fn rank(&self, arena: &FiniteArena, vertex: Vertex) -> Option<u32> {
        let r = self.rank[arena.id(vertex)];
        (r != UNRANKED).then_some(r)
    }

    pub fn is_winning(&self, arena: &FiniteArena, vertex: Vertex) -> bool {
        self.rank(arena, vertex).is_some()
    }

    /// The prescribed move at a winning reacher vertex.
    pub fn choice(&self, arena: &FiniteArena, y: i64) -> Option<ReacherChoice> {
        let id = arena.id(Vertex::Reacher(y));
        let i = self.choice.get(id - arena.opponent_count()).copied()?;
        if i == UNRANKED {
            return None;
        }
        let u = arena.u[i as usize];
        Some(match arena.reacher_step(y, u) {
            Vertex::Opponent(next) => ReacherChoice::Window { u, next },
            Vertex::HighWin => ReacherChoice::HighWin { u },
            other => unreachable!("strategy leads to losing sink {other:?}"),
        })
    }

    /// Winning opponent vertices (window values) in arena coordinates.
    pub fn winning_values(&self, arena: &FiniteArena) -> Vec<i64> {
        (0..=arena.b).filter(|&x| self.rank[x as usize] != UNRANKED).collect()
    }
}

/// Backward fixed point from `target`: reacher vertices win with one winning
/// successor, opponent-owned vertices (sinks included) with all successors
/// winning. Worklist over predecessors with out-degree counters, FIFO, so
/// ranks are assigned in nondecreasing order.
pub fn attractor(arena: &FiniteArena, target: Vertex) -> StrategyTable {
    let n = arena.vertex_count();
    let opp = arena.opponent_count();
    let mut rank = vec![UNRANKED; n];
    let mut choice = vec![UNRANKED; arena.reacher_count()];
    let mut remaining: Vec<u32> = (0..n)
        .map(|id| match arena.vertex(id) {
            Vertex::Opponent(_) => arena.v.len() as u32,
            Vertex::Reacher(_) => 0,
            _ => 1,
        })
        .collect();
    let mut queue = VecDeque::new();
    rank[arena.id(target)] = 0;
    queue.push_back(target);
    let mut preds = Vec::new();
    while let Some(vertex) = queue.pop_front() {
        let r = rank[arena.id(vertex)];
        arena.predecessors(vertex, &mut preds);
        for &(p, via) in &preds {
            let pid = arena.id(p);
            if rank[pid] != UNRANKED {
                continue;
            }
            if p.reacher_owned() {
                rank[pid] = r + 1;
                choice[pid - opp] = via.expect("reacher edge carries a move") as u32;
                queue.push_back(p);
            } else {
                remaining[pid] -= 1;
                if remaining[pid] == 0 {
                    rank[pid] = r + 1;
                    queue.push_back(p);
                }
            }
        }
    }
    StrategyTable { rank, choice }
}

/// Counter values `x` whose round-start vertex is in the attractor of
/// `(opponent, 0)`, mapped back through the mirror for negative `b`.
pub fn restr_attr(game: &RobotGame, b: &Int, d: &Int, limit: u64) -> Result<IntSet, ArenaError> {
    let arena = build_restricted_arena(game, b, d, limit)?;
    let table = attractor(&arena, Vertex::Opponent(0));
    let sign = if arena.mirrored { -1 } else { 1 };
    Ok(table.winning_values(&arena).into_iter().map(|x| Int::from(sign * x)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numtheory::Int;

    fn sample_game() -> RobotGame {
        RobotGame::from_i64s(&[-1, 0, 4], &[-1, 3]).unwrap()
    }

    fn int(v: i64) -> Int {
        Int::from(v)
    }

    #[test]
    fn sample_game_window_excludes_minus_one() {
        let arena = build_restricted_arena(&sample_game(), &int(-1), &int(1), DEFAULT_ARENA_LIMIT).unwrap();
        assert!(arena.is_mirrored());
        let table = attractor(&arena, Vertex::Opponent(0));
        assert!(!table.is_winning(&arena, Vertex::Opponent(1)));
        assert_eq!(restr_attr(&sample_game(), &int(-1), &int(1), DEFAULT_ARENA_LIMIT).unwrap(), IntSet::from([0]));
        // With the larger default bound the same values come out.
        let wide = restr_attr(&sample_game(), &int(-9), &int(1), DEFAULT_ARENA_LIMIT).unwrap();
        assert_eq!(wide, IntSet::from([0, -2, -3, -4, -5, -6, -7, -8, -9]));
    }

    #[test]
    fn degenerate_window() {
        let arena = build_restricted_arena(&sample_game(), &int(0), &int(1), DEFAULT_ARENA_LIMIT).unwrap();
        assert_eq!(arena.opponent_count(), 1);
        assert_eq!(arena.reacher_count(), 5);
        assert_eq!(restr_attr(&sample_game(), &int(0), &int(1), DEFAULT_ARENA_LIMIT).unwrap(), IntSet::from([0]));
    }

    #[test]
    fn edge_counts() {
        let arena = build_restricted_arena(&sample_game(), &int(3), &int(1), DEFAULT_ARENA_LIMIT).unwrap();
        assert_eq!(arena.opponent_count(), 4);
        assert_eq!(arena.reacher_count(), 3 + 3 + 1 + 1);
        for x in 0..=3 {
            assert_eq!(arena.successors(Vertex::Opponent(x)).len(), 2);
        }
        assert_eq!(arena.successors(Vertex::HighWin), vec![Vertex::Opponent(0)]);
        assert_eq!(arena.successors(Vertex::NegLose), vec![Vertex::NegLose]);
        let dump = arena.dump();
        assert!(dump.contains("opp:0\topponent\trea:-1 rea:3"));
        assert!(dump.contains("high_win\topponent\topp:0"));
    }

    #[test]
    fn sinks() {
        let arena = build_restricted_arena(&sample_game(), &int(3), &int(1), DEFAULT_ARENA_LIMIT).unwrap();
        let table = attractor(&arena, Vertex::Opponent(0));
        assert!(!table.is_winning(&arena, Vertex::NegLose));
        assert!(!table.is_winning(&arena, Vertex::HighLose));
        assert!(table.is_winning(&arena, Vertex::HighWin));
    }

    #[test]
    fn decrementing_reacher() {
        let g = RobotGame::from_i64s(&[-1], &[0]).unwrap();
        assert_eq!(restr_attr(&g, &int(5), &int(1), DEFAULT_ARENA_LIMIT).unwrap(), IntSet::from([0, 1, 2, 3, 4, 5]));
    }

    #[test]
    fn too_large() {
        let err = build_restricted_arena(&sample_game(), &int(1 << 40), &int(1), DEFAULT_ARENA_LIMIT).unwrap_err();
        assert!(matches!(err, ArenaError::ArenaTooLarge { .. }));
    }

    /// One-step operator applied to a winning set adds nothing.
    fn assert_fixed_point(arena: &FiniteArena, table: &StrategyTable, target: Vertex) {
        for id in 0..arena.vertex_count() {
            let vertex = arena.vertex(id);
            if vertex == target {
                continue;
            }
            let succ = arena.successors(vertex);
            let wins = |s: &Vertex| table.is_winning(arena, *s);
            let forced = if vertex.reacher_owned() { succ.iter().any(wins) } else { succ.iter().all(wins) };
            assert_eq!(forced, table.is_winning(arena, vertex), "{vertex:?}");
        }
    }

    /// Every play following the table from a winning vertex reaches the
    /// target with strictly decreasing ranks, whatever the opponent does.
    fn assert_table_sound(arena: &FiniteArena, table: &StrategyTable) {
        for x in table.winning_values(arena) {
            let mut stack = vec![Vertex::Opponent(x)];
            while let Some(vertex) = stack.pop() {
                let r = table.rank(arena, vertex).unwrap();
                match vertex {
                    Vertex::Opponent(0) => {}
                    Vertex::Opponent(x) => {
                        for v in arena.v() {
                            let next = Vertex::Reacher(x + v);
                            assert!(table.rank(arena, next).unwrap() < r);
                            stack.push(next);
                        }
                    }
                    Vertex::Reacher(y) => {
                        let next = match table.choice(arena, y).unwrap() {
                            ReacherChoice::Window { next, .. } => Vertex::Opponent(next),
                            ReacherChoice::HighWin { .. } => Vertex::HighWin,
                        };
                        assert!(table.rank(arena, next).unwrap() < r);
                        stack.push(next);
                    }
                    Vertex::HighWin => assert_eq!(r, 1),
                    other => panic!("reached {other:?}"),
                }
            }
        }
    }

    #[test]
    fn exhaustive_small_arenas() {
        let games = [
            sample_game(),
            RobotGame::from_i64s(&[-3, 1, 2], &[-2, 1]).unwrap(),
            RobotGame::from_i64s(&[-5, -2], &[0, 1, 3]).unwrap(),
            RobotGame::from_i64s(&[-4, 4], &[-1, 2]).unwrap(),
        ];
        for game in &games {
            for b in [0, 1, 7, 23, 50] {
                for d in [1, 2, 3] {
                    let arena = build_restricted_arena(game, &int(b), &int(d), DEFAULT_ARENA_LIMIT).unwrap();
                    let table = attractor(&arena, Vertex::Opponent(0));
                    assert_fixed_point(&arena, &table, Vertex::Opponent(0));
                    assert_table_sound(&arena, &table);
                }
            }
        }
    }
}
