//! Gadget constructors and compiler passes. Every function here is a pure
//! constructor: the same arguments produce structurally identical systems.
//!
//! Generated states are named `#<gadget><k>`; the `#` prefix is reserved for
//! them and the counter skips any name the input already uses.

mod bound;
mod copy;
mod desugar;
mod scaling;
mod shift;
mod xmx;

use std::collections::HashSet;

use thiserror::Error;

use crate::model::{Natural, System};

pub use bound::raise_bound;
pub use copy::gadget_copy2;
pub use desugar::desugar_tests;
pub use scaling::compile_to_2d;
pub use shift::{compile_doubling_only, compile_halving_only, shift_left_block, shift_right_block};
pub use xmx::{gadget_branch_copy, gadget_xmx};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GadgetError {
    #[error("test against {value} exceeds the bound {bound}")]
    TestValueExceedsBound { value: Natural, bound: Natural },
    #[error("upper-bound or equality test in a system without a bound")]
    UpperTestWithoutBound,
    #[error("new bound {new} is below the current bound {old}")]
    BoundDecrease { old: Natural, new: Natural },
    #[error("the system has no bound")]
    Unbounded,
    #[error("the system must have dimension 1")]
    NotDimensionOne,
    #[error("bound {0} is not of the form 2^n - 1 with n >= 1")]
    BoundNotPowerOfTwoMinusOne(Natural),
    #[error("{0} is not a power of two >= 2")]
    NotPowerOfTwo(Natural),
    #[error("gadget parameter {0} is too large")]
    TooLarge(Natural),
}

/// A constructed system with designated entry and exit states.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetHandle {
    pub system: System,
    pub entry: String,
    pub exits: Vec<String>,
    pub declared_bound: Natural,
}

impl GadgetHandle {
    pub fn exit(&self) -> &str {
        &self.exits[0]
    }
}

/// Allocates state names that do not clash with an existing system.
pub(crate) struct Fresh {
    taken: HashSet<String>,
    prefix: String,
    next: usize,
}

impl Fresh {
    pub fn new(sys: &System, gadget: &str) -> Self {
        Fresh {
            taken: sys.states.iter().cloned().collect(),
            prefix: format!("#{gadget}"),
            next: 0,
        }
    }

    /// A new name, also registered as a state of `sys`.
    pub fn state(&mut self, sys: &mut System) -> String {
        loop {
            let name = format!("{}{}", self.prefix, self.next);
            self.next += 1;
            if self.taken.insert(name.clone()) {
                sys.add_state(&name);
                return name;
            }
        }
    }
}

/// `n` such that `value = 2^n`, if `value` is a power of two.
pub(crate) fn log2_exact(value: Natural) -> Option<u32> {
    value.is_power_of_two().then(|| value.trailing_zeros())
}

/// The same system with all transitions removed; the starting point of
/// every pass that rewrites transitions one by one.
pub(crate) fn skeleton(sys: &System) -> System {
    System {
        transitions: Vec::new(),
        ..sys.clone()
    }
}
