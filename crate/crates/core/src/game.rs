//! Robot games, plays and finite descriptions of winning sets.

use std::fmt;

use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::numtheory::{Int, IntSet};

/// The two players. The reacher owns `U`, the opponent owns `V`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Reacher,
    Opponent,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Reacher => "U",
            Side::Opponent => "V",
        })
    }
}

#[derive(Debug, Error)]
pub enum GameError {
    #[error("move set {0} is empty")]
    EmptyMoveSet(Side),
    #[error("malformed integer {0:?}")]
    BadInteger(String),
    #[error("malformed game file: {0}")]
    Json(#[from] serde_json::Error),
    #[error("malformed description: {0}")]
    BadDescription(String),
}

/// A robot game `(U, V)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RobotGame {
    u: IntSet,
    v: IntSet,
}

impl RobotGame {
    /// Validates and builds a game; duplicate moves are merged.
    pub fn new(u: IntSet, v: IntSet) -> Result<Self, GameError> {
        if u.is_empty() {
            return Err(GameError::EmptyMoveSet(Side::Reacher));
        }
        if v.is_empty() {
            return Err(GameError::EmptyMoveSet(Side::Opponent));
        }
        Ok(RobotGame { u, v })
    }

    pub fn from_i64s(u: &[i64], v: &[i64]) -> Result<Self, GameError> {
        Self::new(IntSet::from_i64s(u), IntSet::from_i64s(v))
    }

    /// Reacher moves.
    pub fn u(&self) -> &IntSet {
        &self.u
    }

    /// Opponent moves.
    pub fn v(&self) -> &IntSet {
        &self.v
    }

    pub fn min_u(&self) -> &Int {
        self.u.smallest().expect("validated")
    }

    pub fn max_u(&self) -> &Int {
        self.u.largest().expect("validated")
    }

    pub fn min_v(&self) -> &Int {
        self.v.smallest().expect("validated")
    }

    pub fn max_v(&self) -> &Int {
        self.v.largest().expect("validated")
    }

    /// `(-U, -V)`.
    pub fn mirror(&self) -> RobotGame {
        RobotGame { u: self.u.negated(), v: self.v.negated() }
    }

    /// Largest absolute value among all moves.
    pub fn max_abs_move(&self) -> Int {
        self.u.max_abs().expect("validated").max(self.v.max_abs().expect("validated"))
    }

    /// Moves as `i64`, when they all fit.
    pub fn small_moves(&self) -> Option<(Vec<i64>, Vec<i64>)> {
        let conv = |s: &IntSet| s.iter().map(|x| i64::try_from(x).ok()).collect::<Option<Vec<_>>>();
        Some((conv(&self.u)?, conv(&self.v)?))
    }
}

impl fmt::Display for RobotGame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "U={} V={}", self.u, self.v)
    }
}

/// Non-empty integer interval `[lo, hi]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Interval {
    pub lo: Int,
    pub hi: Int,
}

impl Interval {
    pub fn new(lo: Int, hi: Int) -> Self {
        assert!(lo <= hi, "empty interval [{lo}, {hi}]");
        Interval { lo, hi }
    }

    pub fn from_i64s(lo: i64, hi: i64) -> Self {
        Self::new(lo.into(), hi.into())
    }

    pub fn contains(&self, x: &Int) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn len(&self) -> Int {
        &self.hi - &self.lo + 1
    }

    pub fn widen(&self, k: &Int) -> Interval {
        Interval::new(&self.lo - k, &self.hi + k)
    }

    pub fn translate(&self, t: &Int) -> Interval {
        Interval { lo: &self.lo + t, hi: &self.hi + t }
    }

    /// All values of the interval.
    pub fn values(&self) -> IntSet {
        self.multiples(&Int::from(1))
    }

    /// The multiples of `d > 0` inside the interval.
    pub fn multiples(&self, d: &Int) -> IntSet {
        assert!(d.is_positive());
        let mut out = IntSet::new();
        let mut x = self.lo.div_ceil(d) * d;
        while x <= self.hi {
            out.insert(x.clone());
            x += d;
        }
        out
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// Direction of a half-line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn from_i8(s: i8) -> Option<Sign> {
        match s {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    /// `x` for `Plus`, `-x` for `Minus`. Maps values into and out of the
    /// oriented frame where the half-line points up.
    pub fn orient(self, x: &Int) -> Int {
        match self {
            Sign::Plus => x.clone(),
            Sign::Minus => -x,
        }
    }
}

/// Finite description of a winning set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum WinSetDescription {
    /// Only 0 wins.
    TrivialZero,
    /// Exactly the multiples of `d`.
    Lattice { d: Int },
    /// For `Plus`: multiples of `d` strictly above `bound`, plus `finite_part`,
    /// a subset of `[0, bound]` containing 0. Mirrored for `Minus`.
    HalfLine { sign: Sign, d: Int, bound: Int, finite_part: IntSet },
}

impl WinSetDescription {
    pub fn member(&self, x: &Int) -> bool {
        match self {
            WinSetDescription::TrivialZero => x.is_zero(),
            WinSetDescription::Lattice { d } => x.is_multiple_of(d),
            WinSetDescription::HalfLine { sign, d, bound, finite_part } => {
                let (ox, ob) = (sign.orient(x), sign.orient(bound));
                if ox > ob {
                    x.is_multiple_of(d)
                } else {
                    finite_part.contains(x)
                }
            }
        }
    }

    /// The description of `{-x : x winning}`.
    pub fn negate(&self) -> WinSetDescription {
        match self {
            WinSetDescription::HalfLine { sign, d, bound, finite_part } => {
                WinSetDescription::HalfLine {
                    sign: sign.flip(),
                    d: d.clone(),
                    bound: -bound,
                    finite_part: finite_part.negated(),
                }
            }
            other => other.clone(),
        }
    }

    /// Lattice step of the unbounded part (1 for `TrivialZero`).
    pub fn period(&self) -> Int {
        match self {
            WinSetDescription::TrivialZero => Int::from(1),
            WinSetDescription::Lattice { d } | WinSetDescription::HalfLine { d, .. } => d.clone(),
        }
    }

    /// Distance from `x` to the nearest member.
    pub fn distance(&self, x: &Int) -> Int {
        let to_lattice = |d: &Int| {
            let r = x.mod_floor(d);
            let up = d - &r;
            r.min(up)
        };
        match self {
            WinSetDescription::TrivialZero => x.abs(),
            WinSetDescription::Lattice { d } => to_lattice(d),
            WinSetDescription::HalfLine { sign, d, bound, finite_part } => {
                let ox = sign.orient(x);
                let ob = sign.orient(bound);
                // Smallest oriented tail member strictly above the bound.
                let first_tail = Integer::div_ceil(&(&ob + 1), d) * d;
                let tail = if ox >= first_tail {
                    let r = ox.mod_floor(d);
                    let below = &ox - &r;
                    if below >= first_tail {
                        r.clone().min(d - &r)
                    } else {
                        d - &r
                    }
                } else {
                    &first_tail - &ox
                };
                finite_part
                    .iter()
                    .map(|m| (m - x).abs())
                    .fold(tail, |best, dist| best.min(dist))
            }
        }
    }
}

impl fmt::Display for WinSetDescription {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WinSetDescription::TrivialZero => f.write_str("trivial_zero {0}"),
            WinSetDescription::Lattice { d } => write!(f, "lattice {d}Z"),
            WinSetDescription::HalfLine { sign, d, bound, finite_part } => {
                let rel = if *sign == Sign::Plus { '>' } else { '<' };
                write!(f, "half_line {{x in {d}Z : x {rel} {bound}}} u {finite_part}")
            }
        }
    }
}

/// Whose turn it is.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Turn {
    Reacher,
    Opponent,
}

/// Which player moves first in every round.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Convention {
    #[default]
    OpponentFirst,
    ReacherFirst,
}

impl Convention {
    pub fn first(self) -> Turn {
        match self {
            Convention::OpponentFirst => Turn::Opponent,
            Convention::ReacherFirst => Turn::Reacher,
        }
    }
}

/// Position within a play.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlayState {
    pub counter: Int,
    pub turn: Turn,
    pub round_count: u64,
    pub convention: Convention,
}

impl PlayState {
    pub fn start(x0: Int, convention: Convention) -> Self {
        PlayState { counter: x0, turn: convention.first(), round_count: 0, convention }
    }

    /// Applies a move by the player to move. A round is complete once both
    /// players have moved.
    pub fn apply(&mut self, delta: &Int) {
        self.counter += delta;
        let last_of_round = match self.convention {
            Convention::OpponentFirst => self.turn == Turn::Reacher,
            Convention::ReacherFirst => self.turn == Turn::Opponent,
        };
        if last_of_round {
            self.round_count += 1;
        }
        self.turn = match self.turn {
            Turn::Reacher => Turn::Opponent,
            Turn::Opponent => Turn::Reacher,
        };
    }

    /// The reacher has just moved and the counter is 0.
    pub fn reacher_won(&self) -> bool {
        self.turn == Turn::Opponent && self.counter.is_zero()
    }
}

pub fn parse_int(s: &str) -> Result<Int, GameError> {
    s.trim().parse::<Int>().map_err(|_| GameError::BadInteger(s.to_string()))
}

fn parse_set(items: &[String]) -> Result<IntSet, GameError> {
    items.iter().map(|s| parse_int(s)).collect()
}

fn to_strings(set: &IntSet) -> Vec<String> {
    set.iter().map(|x| x.to_string()).collect()
}

/// On-disk game file. Integers are decimal strings.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GameFile {
    #[serde(rename = "U")]
    pub u: Vec<String>,
    #[serde(rename = "V")]
    pub v: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x0: Option<String>,
}

impl GameFile {
    pub fn new(game: &RobotGame, x0: Option<&Int>) -> Self {
        GameFile { u: to_strings(game.u()), v: to_strings(game.v()), x0: x0.map(|x| x.to_string()) }
    }

    pub fn parse(json: &str) -> Result<(RobotGame, Option<Int>), GameError> {
        let file: GameFile = serde_json::from_str(json)?;
        let game = RobotGame::new(parse_set(&file.u)?, parse_set(&file.v)?)?;
        let x0 = file.x0.as_deref().map(parse_int).transpose()?;
        Ok((game, x0))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data")
    }
}

/// Serialized form of a [`WinSetDescription`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DescriptionFile {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sign: Option<i8>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub finite_part: Option<Vec<String>>,
}

impl From<&WinSetDescription> for DescriptionFile {
    fn from(desc: &WinSetDescription) -> Self {
        let empty = DescriptionFile { kind: String::new(), d: None, sign: None, bound: None, finite_part: None };
        match desc {
            WinSetDescription::TrivialZero => DescriptionFile { kind: "trivial_zero".into(), ..empty },
            WinSetDescription::Lattice { d } => {
                DescriptionFile { kind: "lattice".into(), d: Some(d.to_string()), ..empty }
            }
            WinSetDescription::HalfLine { sign, d, bound, finite_part } => DescriptionFile {
                kind: "half_line".into(),
                d: Some(d.to_string()),
                sign: Some(sign.as_i8()),
                bound: Some(bound.to_string()),
                finite_part: Some(to_strings(finite_part)),
            },
        }
    }
}

impl TryFrom<&DescriptionFile> for WinSetDescription {
    type Error = GameError;

    fn try_from(file: &DescriptionFile) -> Result<Self, GameError> {
        let missing = |field: &str| GameError::BadDescription(format!("missing {field}"));
        let positive_d = || -> Result<Int, GameError> {
            let d = parse_int(file.d.as_deref().ok_or_else(|| missing("d"))?)?;
            if !d.is_positive() {
                return Err(GameError::BadDescription("d must be positive".into()));
            }
            Ok(d)
        };
        match file.kind.as_str() {
            "trivial_zero" => Ok(WinSetDescription::TrivialZero),
            "lattice" => Ok(WinSetDescription::Lattice { d: positive_d()? }),
            "half_line" => {
                let sign = file
                    .sign
                    .and_then(Sign::from_i8)
                    .ok_or_else(|| GameError::BadDescription("sign must be 1 or -1".into()))?;
                let bound = parse_int(file.bound.as_deref().ok_or_else(|| missing("bound"))?)?;
                let finite_part = parse_set(file.finite_part.as_deref().ok_or_else(|| missing("finite_part"))?)?;
                Ok(WinSetDescription::HalfLine { sign, d: positive_d()?, bound, finite_part })
            }
            other => Err(GameError::BadDescription(format!("unknown kind {other:?}"))),
        }
    }
}

impl WinSetDescription {
    pub fn to_json(&self) -> String {
        serde_json::to_string(&DescriptionFile::from(self)).expect("plain data")
    }

    pub fn from_json(json: &str) -> Result<Self, GameError> {
        let file: DescriptionFile = serde_json::from_str(json)?;
        WinSetDescription::try_from(&file)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(v: i64) -> Int {
        Int::from(v)
    }

    fn sample_game_description() -> WinSetDescription {
        WinSetDescription::HalfLine { sign: Sign::Minus, d: int(1), bound: int(-1), finite_part: IntSet::from([0]) }
    }

    #[test]
    fn validation() {
        assert!(RobotGame::from_i64s(&[-1, 0, 4], &[-1, 3]).is_ok());
        assert!(matches!(RobotGame::from_i64s(&[], &[1]), Err(GameError::EmptyMoveSet(Side::Reacher))));
        assert!(matches!(RobotGame::from_i64s(&[1], &[]), Err(GameError::EmptyMoveSet(Side::Opponent))));
        let g = RobotGame::from_i64s(&[2, 2], &[0]).unwrap();
        assert_eq!(g.u(), &IntSet::from([2]));
    }

    #[test]
    fn mirror_negates() {
        let g = RobotGame::from_i64s(&[-1, 0, 4], &[-1, 3]).unwrap();
        let m = g.mirror();
        assert_eq!(m.u(), &IntSet::from([1, 0, -4]));
        assert_eq!(m.v(), &IntSet::from([1, -3]));
        assert_eq!(m.mirror(), g);
    }

    #[test]
    fn membership() {
        let sample_game = sample_game_description();
        assert!(!sample_game.member(&int(-1)));
        assert!(sample_game.member(&int(0)));
        assert!(sample_game.member(&int(-2)));
        assert!(!sample_game.member(&int(1)));
        assert!(WinSetDescription::Lattice { d: int(3) }.member(&int(-6)));
        assert!(WinSetDescription::TrivialZero.member(&int(0)));
        assert!(!WinSetDescription::TrivialZero.member(&int(5)));
        let neg = sample_game.negate();
        for x in -10..10 {
            assert_eq!(sample_game.member(&int(x)), neg.member(&int(-x)));
        }
    }

    #[test]
    fn distance_matches_scan() {
        let descs = [
            sample_game_description(),
            WinSetDescription::Lattice { d: int(4) },
            WinSetDescription::TrivialZero,
            WinSetDescription::HalfLine { sign: Sign::Plus, d: int(3), bound: int(7), finite_part: IntSet::from([0, 5]) },
        ];
        for desc in &descs {
            for x in -20..20 {
                let scan = (-60i64..60)
                    .filter(|m| desc.member(&int(*m)))
                    .map(|m| (m - x).abs())
                    .min()
                    .unwrap();
                assert_eq!(desc.distance(&int(x)), int(scan), "{desc} at {x}");
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let (g, x0) = GameFile::parse(r#"{"U":["-1","0","4"],"V":["-1","3"],"x0":"-3"}"#).unwrap();
        assert_eq!(g, RobotGame::from_i64s(&[-1, 0, 4], &[-1, 3]).unwrap());
        assert_eq!(x0, Some(int(-3)));
        let again = GameFile::parse(&GameFile::new(&g, None).to_json()).unwrap();
        assert_eq!(again, (g, None));
        for desc in [sample_game_description(), WinSetDescription::Lattice { d: int(2) }, WinSetDescription::TrivialZero] {
            assert_eq!(WinSetDescription::from_json(&desc.to_json()).unwrap(), desc);
        }
        assert_eq!(WinSetDescription::TrivialZero.to_json(), r#"{"kind":"trivial_zero"}"#);
        assert!(GameFile::parse(r#"{"U":["x"],"V":["1"]}"#).is_err());
        assert!(GameFile::parse(r#"{"U":[],"V":["1"]}"#).is_err());
    }

    #[test]
    fn play_state_rounds() {
        let mut s = PlayState::start(int(-3), Convention::OpponentFirst);
        s.apply(&int(3));
        assert_eq!(s.round_count, 0);
        s.apply(&int(0));
        assert_eq!(s.round_count, 1);
        assert!(s.reacher_won());
        let mut r = PlayState::start(int(1), Convention::ReacherFirst);
        r.apply(&int(-1));
        assert!(r.reacher_won());
        assert_eq!(r.round_count, 0);
    }

    #[test]
    fn interval_multiples() {
        let i = Interval::from_i64s(-15, 0);
        assert_eq!(i.multiples(&int(3)).len(), 6);
        assert!(Interval::from_i64s(1, 2).multiples(&int(3)).is_empty());
        assert_eq!(Interval::from_i64s(-2, 7).widen(&int(3)), Interval::from_i64s(-5, 10));
    }
}
