use std::collections::VecDeque;

use crate::model::RunTree;

use super::{SolveError, Solver, Step};

#[derive(Debug, Clone, Copy)]
enum Derive {
    Axiom,
    Step { t: u32, child: u32 },
    Split { t: u32, left: u32, right: u32 },
}

/// Derivable configurations, each with the first derivation that produced it.
pub(crate) struct Derivation {
    how: Vec<Option<Derive>>,
    /// Vector parts of derivable configurations, per state, ascending.
    pub by_state: Vec<Vec<u32>>,
    pub order: Vec<u32>,
}

impl Derivation {
    pub fn contains(&self, idx: usize) -> bool {
        self.how[idx].is_some()
    }

    /// Grows `tree` below `node` (labelled `idx`) into a full run.
    pub fn expand(&self, solver: &Solver, tree: &mut RunTree, node: usize, idx: usize) {
        let mut stack = vec![(node, idx)];
        while let Some((node, idx)) = stack.pop() {
            match self.how[idx].expect("derivable") {
                Derive::Axiom => {}
                Derive::Step { t, child } => {
                    let c = solver.space.decode(child as usize);
                    let ids = tree.attach(node, t as usize, vec![c]);
                    stack.push((ids[0], child as usize));
                }
                Derive::Split { t, left, right } => {
                    let cs = vec![
                        solver.space.decode(left as usize),
                        solver.space.decode(right as usize),
                    ];
                    let ids = tree.attach(node, t as usize, cs);
                    stack.push((ids[1], right as usize));
                    stack.push((ids[0], left as usize));
                }
            }
        }
    }
}

impl Solver<'_> {
    pub(crate) fn derivation(&self) -> Result<&Derivation, SolveError> {
        self.derivation_or_empty()
    }

    pub(crate) fn checked_derivation(&self) -> Result<&Derivation, SolveError> {
        if self.initial.is_none() {
            return Err(SolveError::MissingInitialState);
        }
        self.derivation_or_empty()
    }

    fn derivation_or_empty(&self) -> Result<&Derivation, SolveError> {
        if let Some(d) = self.derivation.get() {
            return Ok(d);
        }
        let d = match self.initial {
            Some(q0) => self.saturate(q0),
            // nothing is derivable without an initial state
            None => Derivation {
                how: vec![None; self.space.size()],
                by_state: vec![Vec::new(); self.space.states.len()],
                order: Vec::new(),
            },
        };
        let _ = self.derivation.set(d);
        Ok(self.derivation.get().unwrap())
    }

    /// FIFO saturation from `q0(0)`: backward closure under non-branching
    /// transitions plus pairwise combination under branching ones.
    fn saturate(&self, q0: usize) -> Derivation {
        let space = &self.space;
        let mut how: Vec<Option<Derive>> = vec![None; space.size()];
        let mut by_state: Vec<Vec<u32>> = vec![Vec::new(); space.states.len()];
        let mut order = Vec::new();
        let mut queue = VecDeque::new();
        let root = space.join(q0, 0);
        how[root] = Some(Derive::Axiom);
        queue.push_back(root);

        let add = |how: &mut Vec<Option<Derive>>, queue: &mut VecDeque<usize>, idx: usize, d: Derive| {
            if how[idx].is_none() {
                how[idx] = Some(d);
                queue.push_back(idx);
            }
        };

        while let Some(c) = queue.pop_front() {
            order.push(c as u32);
            let (s, v) = (space.state_of(c), space.vec_of(c));
            by_state[s].push(v as u32);
            for &t in &self.incoming[s] {
                if let Some(p) = space.unfire(c, &self.steps[t]) {
                    add(&mut how, &mut queue, p, Derive::Step { t: t as u32, child: c as u32 });
                }
            }
            for &t in &self.as_left[s] {
                let Step::Branch { from, right, .. } = self.steps[t] else { unreachable!() };
                for &w in &by_state[right] {
                    if let Some(sum) = space.add(v, w as usize) {
                        let d = Derive::Split {
                            t: t as u32,
                            left: c as u32,
                            right: space.join(right, w as usize) as u32,
                        };
                        add(&mut how, &mut queue, space.join(from, sum), d);
                    }
                }
            }
            for &t in &self.as_right[s] {
                let Step::Branch { from, left, .. } = self.steps[t] else { unreachable!() };
                for &w in &by_state[left] {
                    if let Some(sum) = space.add(v, w as usize) {
                        let d = Derive::Split {
                            t: t as u32,
                            left: space.join(left, w as usize) as u32,
                            right: c as u32,
                        };
                        add(&mut how, &mut queue, space.join(from, sum), d);
                    }
                }
            }
        }
        for list in &mut by_state {
            list.sort_unstable();
        }
        Derivation { how, by_state, order }
    }
}

#[cfg(test)]
mod tests {
    use crate::model::{validate_run_tree, Configuration, System, Transition};
    use crate::solver::{accepts, derivable, Solver};

    #[test]
    fn only_the_axiom() {
        let mut sys = System::new(1, Some(3)).with_initial("q0");
        sys.push(Transition::unary("q0", &[1], "q0"));
        assert_eq!(derivable(&sys).unwrap(), vec![Configuration::new("q0", [0])]);
    }

    #[test]
    fn one_backward_step() {
        let mut sys = System::new(1, Some(3)).with_initial("q0");
        sys.add_state("p").push(Transition::unary("p", &[-1], "q0"));
        let d = derivable(&sys).unwrap();
        assert!(d.contains(&Configuration::new("q0", [0])));
        assert!(d.contains(&Configuration::new("p", [1])));
        assert_eq!(d.len(), 2);
    }

    #[test]
    fn branching_combines_children() {
        // p(n) splits into two copies of a, each closing at 0 or 3
        let mut sys = System::new(1, Some(6)).with_initial("q0");
        sys.add_states(["p", "a"])
            .push(Transition::branch("p", "a", "a"))
            .push(Transition::unary("a", &[-3], "q0"))
            .push(Transition::unary("a", &[0], "q0"));
        let solver = Solver::new(&sys).unwrap();
        for n in 0..=6u64 {
            let root = Configuration::new("p", [n]);
            let expected = matches!(n, 0 | 3 | 6);
            assert_eq!(solver.accepts(&root).unwrap(), expected, "p({n})");
            if expected {
                let run = solver.full_run(&root).unwrap().unwrap();
                let report = validate_run_tree(&sys, &run);
                assert!(report.is_ok(), "{report}");
            }
        }
    }

    #[test]
    fn accepts_axiom_and_rejects_dead_state() {
        let mut sys = System::new(2, Some(2)).with_initial("q0");
        sys.add_state("dead").push(Transition::unary("q0", &[1, 0], "dead"));
        assert!(accepts(&sys, &Configuration::new("q0", [0, 0])).unwrap());
        assert!(!accepts(&sys, &Configuration::new("dead", [1, 0])).unwrap());
    }

    #[test]
    fn missing_initial_state() {
        let mut sys = System::new(1, Some(2));
        sys.add_state("p");
        assert_eq!(derivable(&sys), Err(crate::solver::SolveError::MissingInitialState));
    }
}
