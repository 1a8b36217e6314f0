//! Countdown games and the two reductions: games to acceptance in
//! 1-dimensional branching systems with doubling and halving, and bounded
//! 1-dimensional branching systems to unbounded 2-dimensional ones.

mod branching;
mod countdown;
mod game;

use thiserror::Error;

use crate::gadgets::GadgetError;
use crate::model::ValidationReport;

pub use branching::{reduce_to_2brvass, BranchingReduction};
pub use countdown::{reduce_countdown, reduce_countdown_unguarded, CountdownReduction};
pub use game::{
    normalize_game, solve_countdown, CountdownGame, GameConfiguration, GameMove, GameSolution, Player, START_NODE,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("invalid game: {0}")]
    InvalidGame(String),
    #[error("node {0} has more than two outgoing moves")]
    MoreThanTwoOutgoing(String),
    #[error("game is not normalized (two moves per node, start counter 2^n - 1)")]
    NotNormalized,
    #[error("system has doubling or halving transitions")]
    HasDoubling,
    #[error("system has test transitions; desugar them first")]
    TestsNotDesugared,
    #[error("the system must have dimension 1")]
    NotDimensionOne,
    #[error("the system has no bound")]
    Unbounded,
    #[error("the system has no initial state")]
    MissingInitialState,
    #[error("invalid system:\n{0}")]
    Invalid(ValidationReport),
    #[error("numbers too large")]
    TooLarge,
    #[error(transparent)]
    Gadget(#[from] GadgetError),
}
