//! System model: configurations, transitions, single-step semantics and
//! witness validation.

mod fire;
mod run_tree;
mod system;
mod validate;

pub use fire::{fire, fire_branch, FireError, Inapplicable};
pub use run_tree::{validate_run_tree, MalformedTree, RunMode, RunNode, RunTree};
pub use system::{Configuration, Delta, Natural, System, TestOp, Transition};
pub use validate::{validate_system, ValidationReport, Violation, ViolationKind};
