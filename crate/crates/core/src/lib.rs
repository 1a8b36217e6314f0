//! Reachability for bounded and branching vector addition systems with
//! states, with the gadgets and reductions that relate their variants.

pub mod cli;
pub mod gadgets;
pub mod io;
pub mod model;
pub mod reductions;
pub mod solver;

pub use model::{Configuration, RunMode, RunTree, System, TestOp, Transition};
pub use solver::{SolveError, Solver};
