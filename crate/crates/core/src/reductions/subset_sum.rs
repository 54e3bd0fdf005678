//! One-player robot games `(U, {0})` and the Subset-Sum gadget.

use num_traits::{One, Zero};

use super::ReductionError;
use crate::game::RobotGame;
use crate::numtheory::{self, Int, IntSet};

/// Whether the reacher wins `(U, {0})` from `x0`: `-x0` must be a
/// nonnegative combination of `U`.
pub fn solve_one_player(u: &IntSet, x0: &Int) -> bool {
    numtheory::reachable(u, &-x0)
}

/// One-player game and initial counter that the reacher wins iff some subset
/// of `set` sums to `target`.
///
/// With `n = |set|`, `b = max(set)` and `k = floor(log2(max(n b, s))) + 1`,
/// element `x_i` (ascending order) contributes the moves
/// `-x_i - 2^(k+i) - 2^(k+n)` and `-2^(k+i) - 2^(k+n)`; the high bits force
/// exactly one move per element.
pub fn gen_subset_sum(set: &IntSet, target: &Int) -> Result<(RobotGame, Int), ReductionError> {
    if set.is_empty() || set.iter().any(|x| *x <= Int::zero()) {
        return Err(ReductionError::BadInstance("the set must be nonempty and positive".into()));
    }
    if *target < Int::one() {
        return Err(ReductionError::BadInstance("the target must be positive".into()));
    }
    let n = set.len();
    let b = set.largest().expect("nonempty");
    let top = (b * Int::from(n)).max(target.clone());
    let k = top.bits() as usize;
    let pow2 = |e: usize| Int::one() << e;
    let high = pow2(k + n);
    let mut u = IntSet::new();
    for (i, x) in set.iter().enumerate() {
        let bit = pow2(k + i);
        u.insert(-x - &bit - &high);
        u.insert(-&bit - &high);
    }
    let x0 = target + (k..k + n).map(pow2).sum::<Int>() + Int::from(n) * &high;
    Ok((RobotGame::new(u, IntSet::singleton(Int::zero()))?, x0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(v: i64) -> Int {
        Int::from(v)
    }

    fn brute(set: &[i64], s: i64) -> bool {
        (0u32..1 << set.len()).any(|mask| set.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, x)| x).sum::<i64>() == s)
    }

    #[test]
    fn one_player_examples() {
        assert!(solve_one_player(&IntSet::from([-2, -3]), &int(7)));
        assert!(!solve_one_player(&IntSet::from([2]), &int(1)));
        assert!(solve_one_player(&IntSet::from([2]), &int(0)));
        assert!(!solve_one_player(&IntSet::from([-2, -3]), &int(1)));
    }

    #[test]
    fn gadget_arithmetic() {
        let (game, x0) = gen_subset_sum(&IntSet::from([1, 2]), &int(3)).unwrap();
        assert_eq!(x0, int(91));
        assert_eq!(game.u(), &IntSet::from([-50, -48, -41, -40]));
        assert_eq!(game.v(), &IntSet::from([0]));
        assert_eq!(int(-41) + int(-50), -x0.clone());
        assert!(solve_one_player(game.u(), &x0));

        let (g5, x5) = gen_subset_sum(&IntSet::from([5]), &int(5)).unwrap();
        assert!(solve_one_player(g5.u(), &x5));
        let (g4, x4) = gen_subset_sum(&IntSet::from([5]), &int(4)).unwrap();
        assert!(!solve_one_player(g4.u(), &x4));
    }

    #[test]
    fn rejects_bad_instances() {
        assert!(gen_subset_sum(&IntSet::new(), &int(1)).is_err());
        assert!(gen_subset_sum(&IntSet::from([0, 1]), &int(1)).is_err());
        assert!(gen_subset_sum(&IntSet::from([1]), &int(0)).is_err());
    }

    #[test]
    fn agrees_with_brute_force_on_small_sets() {
        for mask in 1u32..1 << 6 {
            let set: Vec<i64> = (1..=6).filter(|x| mask >> (x - 1) & 1 == 1).collect();
            if set.len() > 3 {
                continue;
            }
            for s in 1..=12 {
                let (game, x0) = gen_subset_sum(&IntSet::from_i64s(&set), &int(s)).unwrap();
                assert_eq!(solve_one_player(game.u(), &x0), brute(&set, s), "{set:?} s={s}");
            }
        }
    }
}
