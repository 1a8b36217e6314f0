//! Exhaustive decision procedures over the bounded configuration space.
//!
//! Everything here enumerates at most `|Q|·(B+1)^d` configurations, so it is
//! only meant for desk-scale instances. Results are deterministic: worklists
//! are FIFO and transitions are scanned in list order.

mod computes;
mod context;
mod derive;
mod frontier;
mod space;

use std::cell::OnceCell;

use thiserror::Error;

use crate::model::{validate_system, Configuration, RunTree, System, ValidationReport};

pub use computes::{check_computes, ComputeCounterexample, ComputeReport, FunctionTable};
pub use frontier::{leaf_frontiers, FrontierSet};

pub(crate) use space::{Space, Step};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("invalid system:\n{0}")]
    Invalid(ValidationReport),
    #[error("the system has no bound; exhaustive search needs one")]
    Unbounded,
    #[error("the system has branching transitions")]
    HasBranching,
    #[error("configuration {0} lies outside the bound")]
    OutOfBounds(Configuration),
    #[error("configuration {0} has the wrong number of counters")]
    DimensionMismatch(Configuration),
    #[error("unknown state `{0}`")]
    UnknownState(String),
    #[error("the system declares no initial state")]
    MissingInitialState,
    #[error("configuration space too large: {states} states, bound {bound}, dimension {dimension}")]
    TooLarge {
        states: usize,
        bound: u64,
        dimension: usize,
    },
    #[error("function table: {0}")]
    BadTable(String),
}

/// Answer to a reachability query, with a witness when positive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReachAnswer {
    pub reachable: bool,
    pub witness: Option<RunTree>,
}

impl ReachAnswer {
    fn from_witness(witness: Option<RunTree>) -> Self {
        ReachAnswer {
            reachable: witness.is_some(),
            witness,
        }
    }
}

/// Membership set over the configuration space of one solver.
#[derive(Debug, Clone)]
pub struct ConfigSet {
    space: Space,
    member: Vec<bool>,
    order: Vec<u32>,
}

impl ConfigSet {
    pub fn contains(&self, c: &Configuration) -> bool {
        self.space.encode(c).is_ok_and(|i| self.member[i])
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// Members in discovery order.
    pub fn iter(&self) -> impl Iterator<Item = Configuration> + '_ {
        self.order.iter().map(|&i| self.space.decode(i as usize))
    }

    /// Members whose state is `state`, as vectors, in discovery order.
    pub fn vectors_in(&self, state: &str) -> Vec<Vec<u64>> {
        let Ok(s) = self.space.state_id(state) else {
            return Vec::new();
        };
        self.order
            .iter()
            .filter(|&&i| self.space.state_of(i as usize) == s)
            .map(|&i| self.space.decode(i as usize).vector)
            .collect()
    }
}

/// Precompiled view of a bounded system. Caches the derivable set.
pub struct Solver<'a> {
    sys: &'a System,
    pub(crate) space: Space,
    steps: Vec<Step>,
    outgoing: Vec<Vec<usize>>,
    incoming: Vec<Vec<usize>>,
    as_left: Vec<Vec<usize>>,
    as_right: Vec<Vec<usize>>,
    initial: Option<usize>,
    derivation: OnceCell<derive::Derivation>,
}

impl<'a> Solver<'a> {
    pub fn new(sys: &'a System) -> Result<Self, SolveError> {
        Self::with_limit(sys, None)
    }

    /// Like [`Solver::new`] but refuses configuration spaces above `limit`.
    pub fn with_limit(sys: &'a System, limit: Option<usize>) -> Result<Self, SolveError> {
        let report = validate_system(sys);
        if !report.is_ok() {
            return Err(SolveError::Invalid(report));
        }
        let space = Space::new(sys, limit)?;
        let steps = sys
            .transitions
            .iter()
            .map(|t| space.compile(t))
            .collect::<Result<Vec<_>, _>>()?;
        let n = sys.states.len();
        let mut outgoing = vec![Vec::new(); n];
        let mut incoming = vec![Vec::new(); n];
        let mut as_left = vec![Vec::new(); n];
        let mut as_right = vec![Vec::new(); n];
        for (i, s) in steps.iter().enumerate() {
            outgoing[s.from()].push(i);
            match *s {
                Step::Branch { left, right, .. } => {
                    as_left[left].push(i);
                    as_right[right].push(i);
                }
                _ => incoming[s.to().unwrap()].push(i),
            }
        }
        let initial = match &sys.initial {
            Some(q0) => Some(space.state_id(q0)?),
            None => None,
        };
        Ok(Solver {
            sys,
            space,
            steps,
            outgoing,
            incoming,
            as_left,
            as_right,
            initial,
            derivation: OnceCell::new(),
        })
    }

    pub fn system(&self) -> &System {
        self.sys
    }

    pub fn space_size(&self) -> usize {
        self.space.size()
    }

    fn set_from(&self, order: Vec<u32>) -> ConfigSet {
        let mut member = vec![false; self.space.size()];
        for &i in &order {
            member[i as usize] = true;
        }
        ConfigSet {
            space: self.space.clone(),
            member,
            order,
        }
    }

    /// Linear reachability by breadth-first search; rejects branching systems.
    /// The witness is the shortest run, ties broken by transition order.
    pub fn reach_linear(&self, src: &Configuration, dst: &Configuration) -> Result<ReachAnswer, SolveError> {
        if self.sys.has_branching() {
            return Err(SolveError::HasBranching);
        }
        self.reach_forward(src, dst)
    }

    /// Context reachability decided by the forward spine search.
    pub fn reach_forward(&self, src: &Configuration, dst: &Configuration) -> Result<ReachAnswer, SolveError> {
        let s = self.space.encode(src)?;
        let d = self.space.encode(dst)?;
        let search = self.spine_forward(s, Some(d));
        Ok(ReachAnswer::from_witness(search.witness(self, d)))
    }

    /// Context reachability decided by the backward least fixpoint from `dst`.
    pub fn reach_context(&self, src: &Configuration, dst: &Configuration) -> Result<ReachAnswer, SolveError> {
        let s = self.space.encode(src)?;
        let d = self.space.encode(dst)?;
        let search = self.spine_backward(d, Some(s));
        Ok(ReachAnswer::from_witness(search.witness(self, s)))
    }

    /// All `c` with `c →* dst`.
    pub fn sources_of(&self, dst: &Configuration) -> Result<ConfigSet, SolveError> {
        let d = self.space.encode(dst)?;
        Ok(self.set_from(self.spine_backward(d, None).order))
    }

    /// All `c` with `src →* c`.
    pub fn targets_of(&self, src: &Configuration) -> Result<ConfigSet, SolveError> {
        let s = self.space.encode(src)?;
        Ok(self.set_from(self.spine_forward(s, None).order))
    }

    /// The set of configurations admitting a full run.
    pub fn derivable(&self) -> Result<ConfigSet, SolveError> {
        let d = self.checked_derivation()?;
        Ok(self.set_from(d.order.clone()))
    }

    pub fn accepts(&self, root: &Configuration) -> Result<bool, SolveError> {
        let r = self.space.encode(root)?;
        Ok(self.checked_derivation()?.contains(r))
    }

    /// A full run rooted at `root`, if one exists.
    pub fn full_run(&self, root: &Configuration) -> Result<Option<RunTree>, SolveError> {
        let r = self.space.encode(root)?;
        let d = self.checked_derivation()?;
        if !d.contains(r) {
            return Ok(None);
        }
        let mut tree = RunTree::new(crate::model::RunMode::FullRun, root.clone());
        d.expand(self, &mut tree, 0, r);
        Ok(Some(tree))
    }
}

/// Breadth-first reachability for systems without branching.
pub fn reach_linear(sys: &System, src: &Configuration, dst: &Configuration) -> Result<ReachAnswer, SolveError> {
    Solver::new(sys)?.reach_linear(src, dst)
}

/// Existence of a `(src, dst)`-context, with a witness context.
pub fn reach_context(sys: &System, src: &Configuration, dst: &Configuration) -> Result<ReachAnswer, SolveError> {
    Solver::new(sys)?.reach_context(src, dst)
}

/// Least fixpoint of configurations with a full run.
pub fn derivable(sys: &System) -> Result<Vec<Configuration>, SolveError> {
    let solver = Solver::new(sys)?;
    let mut out: Vec<Configuration> = solver.derivable()?.iter().collect();
    out.sort();
    Ok(out)
}

/// Whether `root` has a run all of whose leaves are `q0(0)`.
pub fn accepts(sys: &System, root: &Configuration) -> Result<bool, SolveError> {
    Solver::new(sys)?.accepts(root)
}
