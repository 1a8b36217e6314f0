use thiserror::Error;

use super::fire::{fire, fire_branch};
use super::system::{Configuration, System};
use super::validate::{ValidationReport, ViolationKind};

/// Which leaf discipline a run tree must satisfy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RunMode {
    /// Every leaf is `q0(0)`.
    FullRun,
    /// One leaf carries the target, all others are `q0(0)`.
    Context(Configuration),
    /// No constraint on leaves.
    Partial,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunNode {
    pub config: Configuration,
    /// Index of the transition applied at this node, `None` at leaves.
    pub via: Option<usize>,
    pub children: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("malformed run tree: {0}")]
pub struct MalformedTree(pub String);

/// A labelled tree of configurations stored as an arena; node 0 is the root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunTree {
    pub mode: RunMode,
    nodes: Vec<RunNode>,
}

impl RunTree {
    pub fn new(mode: RunMode, root: Configuration) -> Self {
        RunTree {
            mode,
            nodes: vec![RunNode {
                config: root,
                via: None,
                children: Vec::new(),
            }],
        }
    }

    /// Builds a linear run `c0 -t0-> c1 -t1-> ...`.
    pub fn chain(mode: RunMode, first: Configuration, steps: &[(usize, Configuration)]) -> Self {
        let mut tree = RunTree::new(mode, first);
        let mut at = 0;
        for (t, c) in steps {
            at = tree.attach(at, *t, vec![c.clone()])[0];
        }
        tree
    }

    /// Checks that `nodes` form a tree rooted at 0 and wraps them.
    pub fn from_nodes(mode: RunMode, nodes: Vec<RunNode>) -> Result<Self, MalformedTree> {
        if nodes.is_empty() {
            return Err(MalformedTree("no nodes".into()));
        }
        let mut parent = vec![None; nodes.len()];
        for (i, n) in nodes.iter().enumerate() {
            if n.children.len() > 2 {
                return Err(MalformedTree(format!("node {i} has more than two children")));
            }
            if n.children.is_empty() != n.via.is_none() {
                return Err(MalformedTree(format!(
                    "node {i}: a transition index is required exactly when there are children"
                )));
            }
            for &c in &n.children {
                if c >= nodes.len() || c == 0 {
                    return Err(MalformedTree(format!("node {i} has invalid child {c}")));
                }
                if parent[c].replace(i).is_some() {
                    return Err(MalformedTree(format!("node {c} has two parents")));
                }
            }
        }
        // every node must hang below the root
        let mut seen = vec![false; nodes.len()];
        let mut stack = vec![0];
        while let Some(i) = stack.pop() {
            if std::mem::replace(&mut seen[i], true) {
                return Err(MalformedTree(format!("cycle through node {i}")));
            }
            stack.extend(&nodes[i].children);
        }
        if let Some(i) = seen.iter().position(|s| !s) {
            return Err(MalformedTree(format!("node {i} is not reachable from the root")));
        }
        Ok(RunTree { mode, nodes })
    }

    /// Applies transition `via` at `parent`, attaching the given children.
    pub fn attach(&mut self, parent: usize, via: usize, children: Vec<Configuration>) -> Vec<usize> {
        assert!(self.nodes[parent].children.is_empty(), "node already expanded");
        let ids: Vec<usize> = (self.nodes.len()..self.nodes.len() + children.len()).collect();
        self.nodes.extend(children.into_iter().map(|config| RunNode {
            config,
            via: None,
            children: Vec::new(),
        }));
        let p = &mut self.nodes[parent];
        p.via = Some(via);
        p.children = ids.clone();
        ids
    }

    pub fn root(&self) -> &Configuration {
        &self.nodes[0].config
    }

    pub fn nodes(&self) -> &[RunNode] {
        &self.nodes
    }

    pub fn node(&self, i: usize) -> &RunNode {
        &self.nodes[i]
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn leaves(&self) -> impl Iterator<Item = &Configuration> {
        self.nodes
            .iter()
            .filter(|n| n.children.is_empty())
            .map(|n| &n.config)
    }

    /// Number of transitions along a chain-shaped tree.
    pub fn steps(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn is_chain(&self) -> bool {
        self.nodes.iter().all(|n| n.children.len() <= 1)
    }

    /// Configurations of a chain from root to leaf.
    pub fn chain_configs(&self) -> Option<Vec<&Configuration>> {
        if !self.is_chain() {
            return None;
        }
        let mut out = vec![&self.nodes[0].config];
        let mut at = 0;
        while let Some(&c) = self.nodes[at].children.first() {
            out.push(&self.nodes[c].config);
            at = c;
        }
        Some(out)
    }
}

/// Checks every parent/child pair, the bound, and the leaf discipline of the
/// tree's mode. Chain-shaped trees validate ordinary linear runs.
pub fn validate_run_tree(sys: &System, tree: &RunTree) -> ValidationReport {
    let mut report = ValidationReport::default();
    for (i, node) in tree.nodes().iter().enumerate() {
        let c = &node.config;
        if !sys.has_state(&c.state) {
            report.push(
                ViolationKind::DanglingState,
                format!("node {i}: unknown state `{}`", c.state),
            );
        }
        if c.vector.len() != sys.dimension {
            report.push(
                ViolationKind::DimensionMismatch,
                format!("node {i}: {} has the wrong arity", c),
            );
            continue;
        }
        if !sys.within_bound(&c.vector) {
            report.push(
                ViolationKind::OutOfBound,
                format!("node {i}: {} exceeds the bound", c),
            );
        }
        let Some(via) = node.via else { continue };
        let Some(t) = sys.transitions.get(via) else {
            report.push(
                ViolationKind::UnknownTransition,
                format!("node {i}: no transition {via}"),
            );
            continue;
        };
        let kids: Vec<&Configuration> = node.children.iter().map(|&k| &tree.node(k).config).collect();
        match (t.is_branch(), kids.as_slice()) {
            (false, [child]) => match fire(sys, c, t) {
                Ok(next) if &next == *child => {}
                Ok(next) => report.push(
                    ViolationKind::BadStep,
                    format!("node {i}: transition {via} leads to {next}, not {child}"),
                ),
                Err(e) => report.push(ViolationKind::BadStep, format!("node {i}: {e}")),
            },
            (true, [left, right]) => {
                let ok = fire_branch(sys, c, t, (&left.vector, &right.vector))
                    .map(|(l, r)| &l == *left && &r == *right);
                match ok {
                    Ok(true) => {}
                    Ok(false) => report.push(
                        ViolationKind::BadStep,
                        format!("node {i}: branch {via} does not produce {left}, {right}"),
                    ),
                    Err(e) => report.push(ViolationKind::BadStep, format!("node {i}: {e}")),
                }
            }
            _ => report.push(
                ViolationKind::BadArity,
                format!("node {i}: transition {via} cannot have {} children", kids.len()),
            ),
        }
    }
    check_leaves(sys, tree, &mut report);
    report
}

fn check_leaves(sys: &System, tree: &RunTree, report: &mut ValidationReport) {
    let init = sys.initial_configuration();
    let is_init = |c: &Configuration| init.as_ref() == Some(c);
    match &tree.mode {
        RunMode::Partial => {}
        RunMode::FullRun => {
            for leaf in tree.leaves().filter(|c| !is_init(c)) {
                report.push(ViolationKind::BadLeaf, format!("leaf {leaf} is not q0(0)"));
            }
        }
        RunMode::Context(target) => {
            let open: Vec<&Configuration> = tree.leaves().filter(|c| !is_init(c)).collect();
            match open.as_slice() {
                [] if is_init(target) => {}
                [] => report.push(
                    ViolationKind::BadLeaf,
                    format!("no leaf carries the target {target}"),
                ),
                [leaf] if *leaf == target => {}
                [leaf] => report.push(
                    ViolationKind::BadLeaf,
                    format!("open leaf {leaf} differs from the target {target}"),
                ),
                more => report.push(
                    ViolationKind::BadLeaf,
                    format!("{} leaves are neither q0(0) nor the target", more.len()),
                ),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gadgets::gadget_copy2;

    fn cfg(s: &str, v: &[u64]) -> Configuration {
        Configuration::new(s, v)
    }

    // Replays the copy gadget on p(2,1) by hand.
    fn copy_chain() -> RunTree {
        RunTree::chain(
            RunMode::Context(cfg("q", &[2, 2])),
            cfg("p", &[2, 1]),
            &[
                (0, cfg("p", &[2, 0])),
                (1, cfg("r1", &[2, 0])),
                (2, cfg("r1", &[1, 6])),
                (2, cfg("r1", &[0, 12])),
                (3, cfg("r2", &[0, 12])),
                (4, cfg("r2", &[1, 7])),
                (4, cfg("r2", &[2, 2])),
                (5, cfg("q", &[2, 2])),
            ],
        )
    }

    #[test]
    fn copy_chain_is_a_context() {
        let sys = gadget_copy2(4).system;
        let tree = copy_chain();
        assert_eq!(tree.steps(), 8);
        let report = validate_run_tree(&sys, &tree);
        assert!(report.is_ok(), "{report}");
    }

    #[test]
    fn trivial_full_run() {
        let mut sys = System::new(1, Some(3)).with_initial("q0");
        sys.add_state("p");
        let tree = RunTree::new(RunMode::FullRun, cfg("q0", &[0]));
        assert!(validate_run_tree(&sys, &tree).is_ok());
        let tree = RunTree::new(RunMode::FullRun, cfg("p", &[0]));
        assert!(validate_run_tree(&sys, &tree).has(ViolationKind::BadLeaf));
    }

    #[test]
    fn bound_violation_is_reported() {
        let sys = gadget_copy2(4).system;
        let tree = RunTree::chain(
            RunMode::Partial,
            cfg("p", &[25, 1]),
            &[(0, cfg("p", &[25, 0]))],
        );
        assert!(validate_run_tree(&sys, &tree).has(ViolationKind::OutOfBound));
    }

    #[test]
    fn wrong_step_and_wrong_target() {
        let sys = gadget_copy2(4).system;
        let tree = RunTree::chain(
            RunMode::Context(cfg("p", &[2, 0])),
            cfg("p", &[2, 1]),
            &[(0, cfg("p", &[2, 1]))],
        );
        let report = validate_run_tree(&sys, &tree);
        assert!(report.has(ViolationKind::BadStep));
        assert!(report.has(ViolationKind::BadLeaf));
    }

    #[test]
    fn branch_nodes_need_two_children() {
        let mut sys = System::new(1, Some(4)).with_initial("q0");
        sys.add_states(["p", "a", "b"])
            .push(Transition::branch("p", "a", "b"));
        let mut tree = RunTree::new(RunMode::Partial, cfg("p", &[3]));
        tree.attach(0, 0, vec![cfg("a", &[1]), cfg("b", &[2])]);
        assert!(validate_run_tree(&sys, &tree).is_ok());
        let mut tree = RunTree::new(RunMode::Partial, cfg("p", &[3]));
        tree.attach(0, 0, vec![cfg("a", &[1]), cfg("b", &[1])]);
        assert!(validate_run_tree(&sys, &tree).has(ViolationKind::BadStep));
        let tree = RunTree::chain(RunMode::Partial, cfg("p", &[3]), &[(0, cfg("a", &[3]))]);
        assert!(validate_run_tree(&sys, &tree).has(ViolationKind::BadArity));
    }

    #[test]
    fn from_nodes_rejects_non_trees() {
        let leaf = |s: &str| RunNode {
            config: cfg(s, &[0]),
            via: None,
            children: vec![],
        };
        let mut root = leaf("p");
        root.via = Some(0);
        root.children = vec![1, 1];
        assert!(RunTree::from_nodes(RunMode::Partial, vec![root.clone(), leaf("q")]).is_err());
        root.children = vec![1];
        assert!(RunTree::from_nodes(RunMode::Partial, vec![root.clone(), leaf("q"), leaf("x")]).is_err());
        assert!(RunTree::from_nodes(RunMode::Partial, vec![root, leaf("q")]).is_ok());
    }

    use super::super::system::Transition;
}
