//! Adversarial certification of a solution on sample values.
//!
//! Winning values are played with the realized strategy against seeded random
//! opponents, the greedy opponent and, when small enough, every opponent
//! line; each match must end in a reacher win within the stack budget.
//! Losing values are checked with the bounded-round oracle.

use std::fmt;

use super::engine::{run_match, Adversary, MatchConfig, MatchOutcome};
use super::oracle::win_within;
use super::strategy::Realizer;
use super::PlayError;
use crate::exec::Exec;
use crate::game::RobotGame;
use crate::numtheory::Int;
use crate::solver::{Solution, Verdict};

#[derive(Clone, Debug)]
pub struct CertifyOptions {
    /// Random opponents per winning value.
    pub trials: u32,
    pub seed: u64,
    /// Largest round count the oracle checks for losing values.
    pub losing_rounds_cap: u64,
    /// Node cap for the exhaustive opponent; larger searches are skipped.
    pub exhaustive_nodes: u64,
    pub exec: Exec,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions { trials: 8, seed: 0, losing_rounds_cap: 64, exhaustive_nodes: 1 << 14, exec: Exec::default() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertifyLine {
    pub x: Int,
    pub verdict: Verdict,
    /// Most rounds any match took (winning values only).
    pub rounds: Option<u64>,
    /// Round budget for winning values, oracle depth for losing ones.
    pub budget: u128,
    pub seed: u64,
    /// Whether every opponent line was explored.
    pub exhaustive: bool,
}

impl fmt::Display for CertifyLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rounds = self.rounds.map_or("-".to_string(), |r| r.to_string());
        write!(f, "x={} {} rounds={} budget={} seed={}", self.x, self.verdict, rounds, self.budget, self.seed)?;
        if self.exhaustive {
            f.write_str(" exhaustive")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CertifyReport {
    pub lines: Vec<CertifyLine>,
}

impl fmt::Display for CertifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for line in &self.lines {
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn derive_seed(seed: u64, index: usize, trial: u32) -> u64 {
    splitmix(splitmix(seed ^ index as u64) ^ u64::from(trial))
}

pub fn certify(game: &RobotGame, solution: &Solution, sample: &[Int], trials: u32, seed: u64) -> Result<CertifyReport, PlayError> {
    certify_with(game, solution, sample, &CertifyOptions { trials, seed, ..CertifyOptions::default() })
}

pub fn certify_with(game: &RobotGame, solution: &Solution, sample: &[Int], opts: &CertifyOptions) -> Result<CertifyReport, PlayError> {
    let realizer = Realizer::new(game, solution)?;
    let depth = opts
        .losing_rounds_cap
        .min(u64::try_from(realizer.generator_costs().iter().sum::<u128>()).unwrap_or(u64::MAX).saturating_add(realizer.arena_vertices()))
        .max(1);
    let indexed: Vec<(usize, &Int)> = sample.iter().enumerate().collect();
    let lines = opts.exec.map(&indexed, |&(i, x)| {
        if solution.description.member(x) {
            certify_winning(game, solution, &realizer, x, derive_seed(opts.seed, i, 0), i, opts)
        } else if win_within(game, x, depth, false) {
            Err(PlayError::CertificationFailed {
                x: x.clone(),
                adversary: "oracle".into(),
                trace: format!("reacher wins within {depth} rounds"),
                seed: opts.seed,
            })
        } else {
            Ok(CertifyLine { x: x.clone(), verdict: Verdict::Lose, rounds: None, budget: depth as u128, seed: opts.seed, exhaustive: false })
        }
    });
    Ok(CertifyReport { lines: lines.into_iter().collect::<Result<_, _>>()? })
}

fn certify_winning(
    game: &RobotGame,
    solution: &Solution,
    realizer: &Realizer<'_>,
    x: &Int,
    line_seed: u64,
    index: usize,
    opts: &CertifyOptions,
) -> Result<CertifyLine, PlayError> {
    let strategy = realizer.strategy(x)?;
    let budget = strategy.budget()?;
    let cfg = MatchConfig {
        exhaustive_nodes: opts.exhaustive_nodes,
        ..MatchConfig::rounds(u64::try_from(budget).map_err(|_| PlayError::Unsupported("budget beyond u64"))?)
    };
    let mut adversaries: Vec<(Adversary, u64)> =
        (0..opts.trials).map(|t| derive_seed(opts.seed, index, t)).map(|s| (Adversary::Random(s), s)).collect();
    adversaries.push((Adversary::Greedy(solution.description.clone()), line_seed));
    adversaries.push((Adversary::Exhaustive, line_seed));
    let mut worst = 0u64;
    let mut exhaustive = false;
    for (adversary, seed) in &adversaries {
        let record = match run_match(game, x, strategy.clone(), adversary, &cfg) {
            Err(PlayError::SearchTooLarge(_)) => continue,
            other => other?,
        };
        match &record.outcome {
            MatchOutcome::ReacherWin(r) => worst = worst.max(*r),
            outcome => {
                return Err(PlayError::CertificationFailed {
                    x: x.clone(),
                    adversary: adversary.to_string(),
                    trace: format!("{outcome:?} after {}", record.transcript()),
                    seed: *seed,
                })
            }
        }
        exhaustive |= matches!(adversary, Adversary::Exhaustive);
    }
    Ok(CertifyLine { x: x.clone(), verdict: Verdict::Win, rounds: Some(worst), budget, seed: line_seed, exhaustive })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver;

    #[test]
    fn sample_game_sample_certifies() {
        let game = RobotGame::from_i64s(&[-1, 0, 4], &[-1, 3]).unwrap();
        let sol = solver::solve(&game).unwrap();
        let sample: Vec<Int> = (-20..=6).map(Int::from).collect();
        let report = certify(&game, &sol, &sample, 4, 7).unwrap();
        assert_eq!(report.lines.len(), sample.len());
        for line in &report.lines {
            assert_eq!(line.verdict, sol.decide(&line.x));
            if let Some(r) = line.rounds {
                assert!(u128::from(r) <= line.budget);
            }
        }
        assert!(report.lines.iter().any(|l| l.exhaustive));
        let again = certify(&game, &sol, &sample, 4, 7).unwrap();
        assert_eq!(report, again);
        assert!(report.to_string().lines().any(|l| l.starts_with("x=-1 LOSE")));
    }

    #[test]
    fn wrong_description_is_caught() {
        let game = RobotGame::from_i64s(&[-1, 0, 4], &[-1, 3]).unwrap();
        let mut sol = solver::solve(&game).unwrap();
        // Claim -2 loses.
        sol.description = crate::game::WinSetDescription::TrivialZero;
        let err = certify(&game, &sol, &[Int::from(-2)], 1, 0).unwrap_err();
        assert!(matches!(err, PlayError::CertificationFailed { .. }));
    }
}
