//! Countdown games, their restricted variant, and backward induction.
//!
//! From `(s, c)` player 1 picks a duration `d <= c` offered at `s`, then
//! player 2 picks a transition `(s, d, s')` and the play moves to
//! `(s', c - d)`. A blocked play is won by player 1 iff the counter is 0
//! (restricted variant: iff it ends in `(sink, 0)`).

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::ReductionError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Transition {
    pub src: usize,
    pub duration: u64,
    pub dst: usize,
}

impl Transition {
    pub fn new(src: usize, duration: u64, dst: usize) -> Self {
        Transition { src, duration, dst }
    }
}

/// A countdown game; `sink` is set for the restricted variant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountdownGame {
    pub locations: usize,
    pub s0: usize,
    pub transitions: Vec<Transition>,
    pub c0: u64,
    pub sink: Option<usize>,
}

#[derive(Serialize, Deserialize)]
struct CountdownFile {
    locations: usize,
    s0: usize,
    transitions: Vec<(usize, u64, usize)>,
    c0: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    sink: Option<usize>,
}

impl CountdownGame {
    pub fn new(locations: usize, s0: usize, transitions: Vec<Transition>, c0: u64) -> Result<Self, ReductionError> {
        let game = CountdownGame { locations, s0, transitions, c0, sink: None };
        game.validate()?;
        Ok(game)
    }

    /// A restricted countdown game; checks the sink and that every duration
    /// belongs to a single location.
    pub fn restricted(locations: usize, s0: usize, transitions: Vec<Transition>, c0: u64, sink: usize) -> Result<Self, ReductionError> {
        let game = CountdownGame { locations, s0, transitions, c0, sink: Some(sink) };
        game.validate()?;
        Ok(game)
    }

    pub fn validate(&self) -> Result<(), ReductionError> {
        let bad = |m: String| Err(ReductionError::BadInstance(m));
        if self.s0 >= self.locations {
            return bad(format!("s0={} out of range", self.s0));
        }
        if self.c0 == 0 {
            return bad("c0 must be positive".into());
        }
        for t in &self.transitions {
            if t.src >= self.locations || t.dst >= self.locations {
                return bad(format!("transition {t:?} leaves the location range"));
            }
            if t.duration == 0 {
                return bad(format!("transition {t:?} has duration 0"));
            }
        }
        match self.sink {
            Some(sink) if sink >= self.locations => bad(format!("sink={sink} out of range")),
            Some(_) => self.check_restricted(),
            None => Ok(()),
        }
    }

    /// The restricted-game invariants: the sink has no outgoing transition
    /// and each duration is offered at one location only.
    pub fn check_restricted(&self) -> Result<(), ReductionError> {
        let violation = |m: String| Err(ReductionError::InvariantViolation(m));
        let Some(sink) = self.sink else {
            return violation("no sink".into());
        };
        let mut owner: BTreeMap<u64, usize> = BTreeMap::new();
        for t in &self.transitions {
            if t.src == sink {
                return violation(format!("sink {sink} has an outgoing transition"));
            }
            if let Some(&s) = owner.get(&t.duration) {
                if s != t.src {
                    return violation(format!("duration {} is offered at {s} and {}", t.duration, t.src));
                }
            }
            owner.insert(t.duration, t.src);
        }
        Ok(())
    }

    /// Distinct durations, ascending.
    pub fn durations(&self) -> Vec<u64> {
        self.transitions.iter().map(|t| t.duration).collect::<BTreeSet<_>>().into_iter().collect()
    }

    pub fn with_c0(&self, c0: u64) -> Self {
        CountdownGame { c0, ..self.clone() }
    }

    pub fn from_json(json: &str) -> Result<Self, ReductionError> {
        let file: CountdownFile = serde_json::from_str(json)?;
        let c0 = file.c0.trim().parse().map_err(|_| ReductionError::BadInstance(format!("bad c0 {:?}", file.c0)))?;
        let transitions = file.transitions.into_iter().map(|(s, d, t)| Transition::new(s, d, t)).collect();
        let game = CountdownGame { locations: file.locations, s0: file.s0, transitions, c0, sink: file.sink };
        game.validate()?;
        Ok(game)
    }

    pub fn to_json(&self) -> String {
        let file = CountdownFile {
            locations: self.locations,
            s0: self.s0,
            transitions: self.transitions.iter().map(|t| (t.src, t.duration, t.dst)).collect(),
            c0: self.c0.to_string(),
            sink: self.sink,
        };
        serde_json::to_string(&file).expect("plain data")
    }

    /// Per location: duration to the targets offered with it.
    fn moves(&self) -> Vec<BTreeMap<u64, Vec<usize>>> {
        let mut moves = vec![BTreeMap::new(); self.locations];
        for t in &self.transitions {
            moves[t.src].entry(t.duration).or_insert_with(Vec::new).push(t.dst);
        }
        moves
    }
}

/// Winner of every configuration `(s, c)` with `c <= c_max`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountdownSolution {
    locations: usize,
    c_max: u64,
    /// Indexed by `c * locations + s`.
    wins: Vec<bool>,
    s0: usize,
    c0: u64,
}

impl CountdownSolution {
    /// Whether player 1 wins from `(s, c)`.
    pub fn wins(&self, s: usize, c: u64) -> bool {
        assert!(c <= self.c_max && s < self.locations, "configuration ({s}, {c}) outside the solved range");
        self.wins[c as usize * self.locations + s]
    }

    /// Whether player 1 wins from `(s0, c0)`.
    pub fn initial(&self) -> bool {
        self.wins(self.s0, self.c0)
    }
}

pub fn solve_countdown(cg: &CountdownGame) -> CountdownSolution {
    solve_countdown_upto(cg, cg.c0)
}

/// Backward induction over counters `0..=c_max`.
pub fn solve_countdown_upto(cg: &CountdownGame, c_max: u64) -> CountdownSolution {
    let n = cg.locations;
    let moves = cg.moves();
    let mut wins = vec![false; (c_max as usize + 1) * n];
    for c in 0..=c_max {
        for s in 0..n {
            let mut available = moves[s].range(..=c).peekable();
            let win = if available.peek().is_none() {
                c == 0 && cg.sink.is_none_or(|sink| sink == s)
            } else {
                available.any(|(&d, targets)| targets.iter().all(|&t| wins[(c - d) as usize * n + t]))
            };
            wins[c as usize * n + s] = win;
        }
    }
    CountdownSolution { locations: n, c_max, wins, s0: cg.s0, c0: cg.c0 }
}

/// Reduces a countdown game to a restricted one with the same winner.
///
/// First a sink is added, reachable from every location with the least unused
/// duration `d'`, and the counter becomes `c + d'`. Then, with `n` the number
/// of locations including the sink, every location `s_i` other than `s0` is
/// split: `(s_i, d, t)` becomes `(s_i, i, s_i')` and `(s_i', 2nd - i, t)`,
/// while `(s0, d, t)` becomes `(s0, 2nd, t)`. The counter is `2n(c + d')`.
///
/// Output locations: `s0 = 0`, then `s_1 .. s_{m-1}`, then their copies, then
/// the sink; the other locations keep their relative order.
pub fn restrict_countdown(cg: &CountdownGame) -> Result<CountdownGame, ReductionError> {
    cg.validate()?;
    let m = cg.locations;
    let n = (m + 1) as u64;
    let used: BTreeSet<u64> = cg.transitions.iter().map(|t| t.duration).collect();
    let fresh = (1..).find(|d| !used.contains(d)).expect("finitely many durations");

    // Old index to split index i in 0..m, with s0 first.
    let mut index = vec![0usize; m];
    let mut next = 1;
    for (s, slot) in index.iter_mut().enumerate() {
        if s != cg.s0 {
            *slot = next;
            next += 1;
        }
    }
    let sink = 2 * m - 1;
    let copy = |i: usize| m - 1 + i;

    let mut with_sink: Vec<(usize, u64, usize)> = cg.transitions.iter().map(|t| (index[t.src], t.duration, index[t.dst])).collect();
    with_sink.extend((0..m).map(|i| (i, fresh, sink)));

    let mut out: BTreeSet<Transition> = BTreeSet::new();
    for (i, d, t) in with_sink {
        if i == 0 {
            out.insert(Transition::new(0, 2 * n * d, t));
        } else {
            out.insert(Transition::new(i, i as u64, copy(i)));
            out.insert(Transition::new(copy(i), 2 * n * d - i as u64, t));
        }
    }
    let c0 = cg.c0.checked_add(fresh).and_then(|c| c.checked_mul(2 * n)).ok_or_else(|| ReductionError::BadInstance("c0 too large".into()))?;
    let restricted = CountdownGame { locations: 2 * m, s0: 0, transitions: out.into_iter().collect(), c0, sink: Some(sink) };
    restricted.check_restricted()?;
    Ok(restricted)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    /// The four-location example game with sink 3.
    pub(crate) fn countdown_example(c0: u64) -> CountdownGame {
        let t = [(0, 6, 0), (0, 3, 1), (0, 3, 2), (1, 2, 0), (1, 2, 2), (1, 1, 3), (2, 4, 0), (2, 4, 1), (2, 5, 3)];
        CountdownGame::restricted(4, 0, t.iter().map(|&(s, d, t)| Transition::new(s, d, t)).collect(), c0, 3).unwrap()
    }

    /// The same transitions without a sink, as a plain countdown game.
    fn countdown_example_plain(c0: u64) -> CountdownGame {
        CountdownGame { sink: None, ..countdown_example(c0) }
    }

    /// Exhaustive minimax over plays, no tables.
    fn minimax(cg: &CountdownGame, s: usize, c: u64) -> bool {
        let options: BTreeSet<u64> = cg.transitions.iter().filter(|t| t.src == s && t.duration <= c).map(|t| t.duration).collect();
        if options.is_empty() {
            return c == 0 && cg.sink.is_none_or(|b| b == s);
        }
        options.into_iter().any(|d| cg.transitions.iter().filter(|t| t.src == s && t.duration == d).all(|t| minimax(cg, t.dst, c - d)))
    }

    #[test]
    fn countdown_example_configurations() {
        let sol = solve_countdown(&countdown_example(8));
        assert!(sol.wins(1, 1));
        assert!(!sol.wins(1, 0));
        assert!(sol.wins(3, 0));
        assert!(!sol.wins(3, 1));
        for c in 0..=8 {
            for s in 0..4 {
                assert_eq!(sol.wins(s, c), minimax(&countdown_example(8), s, c), "({s}, {c})");
            }
        }
        let plain = solve_countdown(&countdown_example_plain(8));
        assert!(plain.wins(0, 0) && plain.wins(2, 0));
    }

    #[test]
    fn restriction_preserves_the_winner_on_countdown_example() {
        for c0 in 4..=10 {
            let cg = countdown_example_plain(c0);
            let r = restrict_countdown(&cg).unwrap();
            r.check_restricted().unwrap();
            assert_eq!(solve_countdown(&r).initial(), solve_countdown(&cg).initial(), "c0={c0}");
        }
    }

    #[test]
    fn restriction_shape() {
        let cg = CountdownGame::new(1, 0, vec![Transition::new(0, 1, 0)], 2).unwrap();
        let r = restrict_countdown(&cg).unwrap();
        // n = 2 locations with the sink, fresh duration 2.
        assert_eq!(r.locations, 2);
        assert_eq!(r.sink, Some(1));
        assert_eq!(r.c0, 2 * 2 * (2 + 2));
        assert_eq!(r.transitions, vec![Transition::new(0, 4, 0), Transition::new(0, 8, 1)]);
        assert!(solve_countdown(&r).initial());

        // s0 = 1 is relabelled to 0.
        let cg = CountdownGame::new(2, 1, vec![Transition::new(1, 1, 0), Transition::new(0, 2, 1)], 3).unwrap();
        let r = restrict_countdown(&cg).unwrap();
        assert!(r.transitions.contains(&Transition::new(0, 6, 1)));
        assert!(r.transitions.contains(&Transition::new(1, 1, 2)));
        assert!(r.transitions.contains(&Transition::new(2, 11, 0)));
        assert_eq!(solve_countdown(&r).initial(), solve_countdown(&cg).initial());
    }

    #[test]
    fn invariants_are_checked() {
        let t = vec![Transition::new(0, 1, 1), Transition::new(1, 1, 0)];
        let err = CountdownGame::restricted(3, 0, t, 2, 2).unwrap_err();
        assert!(matches!(err, ReductionError::InvariantViolation(_)));
        let err = CountdownGame::restricted(2, 0, vec![Transition::new(1, 1, 0)], 2, 1).unwrap_err();
        assert!(matches!(err, ReductionError::InvariantViolation(_)));
        assert!(CountdownGame::new(2, 0, vec![Transition::new(0, 0, 1)], 1).is_err());
        assert!(CountdownGame::new(2, 0, vec![Transition::new(0, 1, 2)], 1).is_err());
    }

    #[test]
    fn json_round_trip() {
        let g = countdown_example(8);
        let json = g.to_json();
        assert!(json.contains("\"c0\":\"8\"") && json.contains("\"sink\":3"));
        assert_eq!(CountdownGame::from_json(&json).unwrap(), g);
        let plain = CountdownGame::from_json(r#"{"locations":2,"s0":0,"transitions":[[0,1,1]],"c0":"3"}"#).unwrap();
        assert_eq!(plain.sink, None);
        assert!(CountdownGame::from_json(r#"{"locations":2,"s0":0,"transitions":[],"c0":"x"}"#).is_err());
    }

    #[test]
    fn blocked_configurations() {
        let g = CountdownGame::new(2, 0, vec![Transition::new(0, 2, 1)], 3).unwrap();
        let sol = solve_countdown(&g);
        assert!(sol.wins(1, 0) && sol.wins(0, 0));
        assert!(!sol.wins(1, 1) && !sol.wins(0, 1));
        assert!(!sol.initial());
        let r = CountdownGame::restricted(2, 0, vec![Transition::new(0, 2, 1)], 2, 1).unwrap();
        let sol = solve_countdown(&r);
        assert!(!sol.wins(0, 0));
        assert!(sol.initial());
    }
}
