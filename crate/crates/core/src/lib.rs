//! Exact solver for one-dimensional robot games.
//!
//! Two players alternately add integers from finite sets `U` (reacher) and
//! `V` (opponent) to a counter; the reacher wins when the counter is 0 after
//! one of his moves. [`solver::solve`] computes the whole winning set as a
//! [`game::WinSetDescription`], together with witness data from which
//! [`play`] realizes and certifies concrete winning strategies.
//! [`reductions`] builds the one-player and countdown-game hardness
//! instances.

pub mod arena;
pub mod exec;
pub mod game;
pub mod numtheory;
pub mod play;
pub mod reductions;
pub mod solver;

pub use exec::Exec;
pub use game::{RobotGame, WinSetDescription};
pub use numtheory::{Int, IntSet};
pub use solver::{decide, solve, Verdict};
