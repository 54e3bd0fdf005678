//! Hardness constructions and the solvers for their source problems:
//! one-player robot games against Subset-Sum, and countdown games through
//! restricted countdown games into robot games with a base-4 encoding.

pub mod countdown;
pub mod encoding;
pub mod subset_sum;

use thiserror::Error;

use crate::game::GameError;

pub use countdown::{restrict_countdown, solve_countdown, CountdownGame, CountdownSolution, Transition};
pub use encoding::{encode_countdown_as_robot_game, good_encoding_check, Code, Encoding, EncodingClass, EncodingLayout};
pub use subset_sum::{gen_subset_sum, solve_one_player};

#[derive(Debug, Error)]
pub enum ReductionError {
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
    #[error("malformed instance: {0}")]
    BadInstance(String),
    #[error("malformed countdown file: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Game(#[from] GameError),
}
