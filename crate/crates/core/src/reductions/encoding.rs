//! Restricted countdown games as robot games.
//!
//! The counter is read in base 4 with four parts, from the least significant
//! digit: one digit per duration (`h` digits), one per location (`n`), the
//! countdown value (`k` digits) and a control part (`k' + 1` digits). Locations
//! are `0..n` with `s0 = 0` and the sink at `n - 1`; durations are indexed in
//! ascending order. The reacher moves first.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, ToPrimitive, Zero};

use super::countdown::CountdownGame;
use super::ReductionError;
use crate::game::{Convention, RobotGame};
use crate::numtheory::{Int, IntSet};

/// Digit layout of the counter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EncodingLayout {
    /// Number of distinct durations.
    pub h: usize,
    /// Number of locations, sink included.
    pub n: usize,
    /// Digits of the countdown value.
    pub k: usize,
    /// Digits needed to write `k`.
    pub k_prime: usize,
    /// Durations by index, ascending.
    pub durations: Vec<u64>,
}

/// `floor(log4(x)) + 1` for `x >= 1`.
fn base4_len(x: u64) -> usize {
    (64 - x.leading_zeros() as usize).div_ceil(2)
}

fn pow4(e: usize) -> Int {
    Int::one() << (2 * e)
}

impl EncodingLayout {
    pub fn for_game(rcg: &CountdownGame) -> Self {
        let durations = rcg.durations();
        let k = base4_len(rcg.c0);
        EncodingLayout { h: durations.len(), n: rcg.locations, k, k_prime: base4_len(k as u64), durations }
    }

    /// Total number of base-4 digits.
    pub fn digits(&self) -> usize {
        self.h + self.n + self.k + self.k_prime + 1
    }

    pub fn location_digit(&self, s: usize) -> usize {
        self.h + s
    }

    pub fn value_digit(&self) -> usize {
        self.h + self.n
    }

    pub fn control_digit(&self) -> usize {
        self.h + self.n + self.k
    }

    pub fn duration_index(&self, d: u64) -> Option<usize> {
        self.durations.binary_search(&d).ok()
    }

    /// `4^h + c0 4^(h+n) + k 4^(h+n+k) + 4^(h+n+k+k')`.
    pub fn initial_counter(&self, c0: u64) -> Int {
        pow4(self.h) + Int::from(c0) * pow4(self.value_digit()) + Int::from(self.k) * pow4(self.control_digit()) + pow4(self.control_digit() + self.k_prime)
    }

    /// Base-4 digits of a nonnegative `x`, least significant first, padded to
    /// [`digits`](Self::digits).
    pub fn digits_of(&self, x: &Int) -> Option<Vec<u8>> {
        if x.is_negative() {
            return None;
        }
        let mut out = Vec::with_capacity(self.digits());
        let mut rest = x.clone();
        let four = Int::from(4);
        while !rest.is_zero() || out.len() < self.digits() {
            out.push((&rest % &four).to_u8().expect("digit"));
            rest /= &four;
        }
        Some(out)
    }
}

/// Moves of the encoding. `d` and `j` index durations (or value digits for
/// `CancelErase`); `s` and `to` are locations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Code {
    /// Opponent: the transition `(s_d, d, to)`.
    DurationGoto { d: usize, to: usize },
    /// Reacher: duration `d` chosen at `s`.
    StateChoose { s: usize, d: usize },
    /// Reacher: ends a play that reached the sink.
    Finish,
    /// Reacher: undoes an opponent move and lowers value digit `j` by `a`.
    CancelErase { d: usize, to: usize, j: usize, a: u8 },
    /// Reacher: undoes an opponent move and removes the pending duration `j`.
    CancelRemove { d: usize, to: usize, j: usize },
}

impl Code {
    pub fn is_opponent(&self) -> bool {
        matches!(self, Code::DurationGoto { .. })
    }

    pub fn value(&self, layout: &EncodingLayout) -> Int {
        let l = layout;
        let goto = |d: usize, to: usize| pow4(l.location_digit(to)) - pow4(d);
        match *self {
            Code::DurationGoto { d, to } => goto(d, to),
            Code::StateChoose { s, d } => pow4(d) - pow4(l.location_digit(s)) - Int::from(l.durations[d]) * pow4(l.value_digit()),
            Code::Finish => {
                -pow4(l.location_digit(l.n - 1)) - Int::from(l.k) * pow4(l.control_digit()) - pow4(l.control_digit() + l.k_prime)
            }
            Code::CancelErase { d, to, j, a } => -goto(d, to) - Int::from(a) * pow4(l.value_digit() + j) - pow4(l.control_digit()),
            Code::CancelRemove { d, to, j } => -goto(d, to) - pow4(j) - pow4(l.control_digit() + l.k_prime),
        }
    }
}

impl fmt::Display for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Code::DurationGoto { d, to } => write!(f, "Duration d{d} Goto {to}"),
            Code::StateChoose { s, d } => write!(f, "State {s} Choose d{d}"),
            Code::Finish => f.write_str("Finish"),
            Code::CancelErase { d, to, j, a } => write!(f, "Cancel (d{d},{to}) Erase ({j},{a})"),
            Code::CancelRemove { d, to, j } => write!(f, "Cancel (d{d},{to}) Remove d{j}"),
        }
    }
}

/// A restricted countdown game encoded as a robot game, reacher first.
#[derive(Clone, Debug)]
pub struct Encoding {
    pub game: RobotGame,
    pub x0: Int,
    pub layout: EncodingLayout,
    pub convention: Convention,
    /// Every code, opponent codes first, in generation order.
    pub codes: Vec<Code>,
    by_value: BTreeMap<Int, Code>,
}

impl Encoding {
    /// The code for a move value; `CancelErase` with `a = 0` has one value
    /// per `j`, and the smallest `j` is returned.
    pub fn decode(&self, x: &Int) -> Option<Code> {
        self.by_value.get(x).copied()
    }

    pub fn value(&self, code: &Code) -> Int {
        code.value(&self.layout)
    }

    /// Codes of the good encoding of a countdown play given as the
    /// transitions taken, with `Finish` appended when it ends at the sink.
    pub fn good_encoding_of_play(&self, play: &[(usize, u64, usize)]) -> Vec<Code> {
        let mut codes = Vec::with_capacity(2 * play.len() + 1);
        for &(s, d, to) in play {
            let d = self.layout.duration_index(d).expect("duration of the game");
            codes.push(Code::StateChoose { s, d });
            codes.push(Code::DurationGoto { d, to });
        }
        if play.last().is_some_and(|&(_, _, to)| to == self.layout.n - 1) {
            codes.push(Code::Finish);
        }
        codes
    }
}

/// Builds the robot game for a restricted countdown game with `s0 = 0` and
/// the sink at `n - 1`.
pub fn encode_countdown_as_robot_game(rcg: &CountdownGame) -> Result<Encoding, ReductionError> {
    rcg.check_restricted()?;
    let n = rcg.locations;
    if rcg.s0 != 0 || rcg.sink != Some(n - 1) {
        return Err(ReductionError::InvariantViolation(format!(
            "locations must be numbered with s0 = 0 and the sink at {} (got s0 = {}, sink = {:?})",
            n - 1,
            rcg.s0,
            rcg.sink
        )));
    }
    let layout = EncodingLayout::for_game(rcg);
    let index = |d: u64| layout.duration_index(d).expect("listed duration");

    let mut gotos: Vec<(usize, usize)> = rcg.transitions.iter().map(|t| (index(t.duration), t.dst)).collect();
    gotos.sort_unstable();
    gotos.dedup();
    let mut chooses: Vec<(usize, usize)> = rcg.transitions.iter().map(|t| (t.src, index(t.duration))).collect();
    chooses.sort_unstable();
    chooses.dedup();

    let mut codes: Vec<Code> = gotos.iter().map(|&(d, to)| Code::DurationGoto { d, to }).collect();
    codes.extend(chooses.iter().map(|&(s, d)| Code::StateChoose { s, d }));
    codes.push(Code::Finish);
    for &(d, to) in &gotos {
        for j in 0..layout.k {
            for a in 0..=3 {
                codes.push(Code::CancelErase { d, to, j, a });
            }
        }
    }
    for &(d, to) in &gotos {
        for j in (0..layout.h).filter(|&j| j != d) {
            codes.push(Code::CancelRemove { d, to, j });
        }
    }

    let mut by_value = BTreeMap::new();
    let (mut u, mut v) = (IntSet::new(), IntSet::new());
    for code in &codes {
        let x = code.value(&layout);
        by_value.entry(x.clone()).or_insert(*code);
        if code.is_opponent() {
            v.insert(x);
        } else {
            u.insert(x);
        }
    }
    let x0 = layout.initial_counter(rcg.c0);
    Ok(Encoding { game: RobotGame::new(u, v)?, x0, layout, convention: Convention::ReacherFirst, codes, by_value })
}

/// Classification of a move sequence against the good-encoding rules.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EncodingClass {
    /// A proper prefix of some good encoding.
    GoodPrefix,
    Good,
    /// The move at this index is the deviating move.
    Bad(usize),
    /// Fails only the rule on how a good encoding ends, or continues after
    /// a good encoding.
    Neither,
}

/// Classifies alternating codes, reacher first. Rules: the first move
/// chooses at `s0 = 0`; each goto repeats the chosen duration; each choice is
/// made where the last goto went; no cancel moves; `Finish` comes last, right
/// after a goto to the sink.
pub fn classify_codes(codes: &[Code], sink: usize) -> EncodingClass {
    let mut last: Option<Code> = None;
    for (i, code) in codes.iter().enumerate() {
        let reacher_turn = i % 2 == 0;
        if code.is_opponent() != !reacher_turn {
            return EncodingClass::Bad(i);
        }
        match (*code, last) {
            (Code::StateChoose { s, .. }, None) => {
                if s != 0 {
                    return EncodingClass::Bad(i);
                }
            }
            (_, None) => return EncodingClass::Bad(i),
            (Code::DurationGoto { d, .. }, Some(Code::StateChoose { d: chosen, .. })) => {
                if d != chosen {
                    return EncodingClass::Bad(i);
                }
            }
            (Code::StateChoose { s, .. }, Some(Code::DurationGoto { to, .. })) => {
                if s != to {
                    return EncodingClass::Bad(i);
                }
            }
            (Code::Finish, Some(Code::DurationGoto { to, .. })) => {
                let rest = codes.len() - i - 1;
                return match (to == sink, rest) {
                    (true, 0) => EncodingClass::Good,
                    (true, _) => EncodingClass::Neither,
                    (false, 0) => EncodingClass::Neither,
                    (false, _) => EncodingClass::Bad(i),
                };
            }
            _ => return EncodingClass::Bad(i),
        }
        last = Some(*code);
    }
    EncodingClass::GoodPrefix
}

/// [`classify_codes`] on move values; fails on values that are no code.
pub fn good_encoding_check(enc: &Encoding, moves: &[Int]) -> Result<EncodingClass, ReductionError> {
    let codes = moves
        .iter()
        .map(|x| enc.decode(x).ok_or_else(|| ReductionError::BadInstance(format!("{x} is not a move of the encoding"))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(classify_codes(&codes, enc.layout.n - 1))
}
