//! Context reachability. A `(src, dst)`-context is a partial run whose path
//! from the root to the distinguished leaf (the spine) only has full runs
//! hanging off it, so both searches walk spines and consult the derivable
//! set for the side branches.

use std::collections::VecDeque;

use crate::model::{RunMode, RunTree};

use super::Solver;

#[derive(Debug, Clone, Copy)]
enum Back {
    Target,
    Step { t: u32, child: u32 },
    /// The spine continues into the left child; the right one is derivable.
    Left { t: u32, spine: u32, other: u32 },
    Right { t: u32, other: u32, spine: u32 },
}

#[derive(Debug, Clone, Copy)]
enum Fwd {
    Source,
    Step { t: u32, parent: u32 },
    /// Reached as the left child of a branch whose right child is derivable.
    Left { t: u32, parent: u32, sibling: u32 },
    Right { t: u32, parent: u32, sibling: u32 },
}

pub(crate) struct Backward {
    how: Vec<Option<Back>>,
    target: usize,
    pub order: Vec<u32>,
}

pub(crate) struct Forward {
    how: Vec<Option<Fwd>>,
    source: usize,
    pub order: Vec<u32>,
}

impl Solver<'_> {
    /// Least fixpoint of `{c : c →* target}`, optionally stopping once `stop`
    /// is found.
    pub(crate) fn spine_backward(&self, target: usize, stop: Option<usize>) -> Backward {
        let space = &self.space;
        let derived = self
            .derivation()
            .expect("derivation without initial state is empty, not an error");
        let mut how: Vec<Option<Back>> = vec![None; space.size()];
        let mut order = Vec::new();
        let mut queue = VecDeque::from([target]);
        how[target] = Some(Back::Target);

        'search: while let Some(c) = queue.pop_front() {
            order.push(c as u32);
            if Some(c) == stop {
                break;
            }
            let (s, v) = (space.state_of(c), space.vec_of(c));
            let mut found = Vec::new();
            for &t in &self.incoming[s] {
                if let Some(p) = space.unfire(c, &self.steps[t]) {
                    found.push((p, Back::Step { t: t as u32, child: c as u32 }));
                }
            }
            for &t in &self.as_left[s] {
                let super::Step::Branch { from, right, .. } = self.steps[t] else { unreachable!() };
                for &w in &derived.by_state[right] {
                    if let Some(sum) = space.add(v, w as usize) {
                        let back = Back::Left {
                            t: t as u32,
                            spine: c as u32,
                            other: space.join(right, w as usize) as u32,
                        };
                        found.push((space.join(from, sum), back));
                    }
                }
            }
            for &t in &self.as_right[s] {
                let super::Step::Branch { from, left, .. } = self.steps[t] else { unreachable!() };
                for &w in &derived.by_state[left] {
                    if let Some(sum) = space.add(v, w as usize) {
                        let back = Back::Right {
                            t: t as u32,
                            other: space.join(left, w as usize) as u32,
                            spine: c as u32,
                        };
                        found.push((space.join(from, sum), back));
                    }
                }
            }
            for (p, back) in found {
                if how[p].is_none() {
                    how[p] = Some(back);
                    queue.push_back(p);
                    if Some(p) == stop {
                        order.push(p as u32);
                        break 'search;
                    }
                }
            }
        }
        Backward { how, target, order }
    }

    /// Breadth-first closure `{c : source →* c}` along spines, optionally
    /// stopping once `stop` is found.
    pub(crate) fn spine_forward(&self, source: usize, stop: Option<usize>) -> Forward {
        let space = &self.space;
        let derived = self
            .derivation()
            .expect("derivation without initial state is empty, not an error");
        let mut how: Vec<Option<Fwd>> = vec![None; space.size()];
        let mut order = Vec::new();
        let mut queue = VecDeque::from([source]);
        how[source] = Some(Fwd::Source);

        'search: while let Some(c) = queue.pop_front() {
            order.push(c as u32);
            if Some(c) == stop {
                break;
            }
            let v = space.vec_of(c);
            let mut found = Vec::new();
            for &t in &self.outgoing[space.state_of(c)] {
                let step = &self.steps[t];
                let t32 = t as u32;
                match *step {
                    super::Step::Branch { left, right, .. } => {
                        // left spine, ascending left component
                        for &w in derived.by_state[right].iter().rev() {
                            if let Some(m1) = space.sub(v, w as usize) {
                                let sibling = space.join(right, w as usize) as u32;
                                found.push((
                                    space.join(left, m1),
                                    Fwd::Left { t: t32, parent: c as u32, sibling },
                                ));
                            }
                        }
                        for &w in &derived.by_state[left] {
                            if let Some(m2) = space.sub(v, w as usize) {
                                let sibling = space.join(left, w as usize) as u32;
                                found.push((
                                    space.join(right, m2),
                                    Fwd::Right { t: t32, parent: c as u32, sibling },
                                ));
                            }
                        }
                    }
                    _ => {
                        if let Some(n) = space.fire(c, step) {
                            found.push((n, Fwd::Step { t: t32, parent: c as u32 }));
                        }
                    }
                }
            }
            for (n, fwd) in found {
                if how[n].is_none() {
                    how[n] = Some(fwd);
                    queue.push_back(n);
                    if Some(n) == stop {
                        order.push(n as u32);
                        break 'search;
                    }
                }
            }
        }
        Forward { how, source, order }
    }
}

impl Backward {
    /// The context from `source` to the search target, if `source` was reached.
    pub fn witness(&self, solver: &Solver, source: usize) -> Option<RunTree> {
        self.how[source]?;
        let space = &solver.space;
        let derived = solver.derivation().ok()?;
        let mut tree = RunTree::new(RunMode::Context(space.decode(self.target)), space.decode(source));
        let (mut node, mut at) = (0, source);
        loop {
            match self.how[at].expect("on the spine") {
                Back::Target => break,
                Back::Step { t, child } => {
                    node = tree.attach(node, t as usize, vec![space.decode(child as usize)])[0];
                    at = child as usize;
                }
                Back::Left { t, spine, other } => {
                    let ids = tree.attach(
                        node,
                        t as usize,
                        vec![space.decode(spine as usize), space.decode(other as usize)],
                    );
                    derived.expand(solver, &mut tree, ids[1], other as usize);
                    node = ids[0];
                    at = spine as usize;
                }
                Back::Right { t, other, spine } => {
                    let ids = tree.attach(
                        node,
                        t as usize,
                        vec![space.decode(other as usize), space.decode(spine as usize)],
                    );
                    derived.expand(solver, &mut tree, ids[0], other as usize);
                    node = ids[1];
                    at = spine as usize;
                }
            }
        }
        Some(tree)
    }
}

impl Forward {
    pub fn contains(&self, idx: usize) -> bool {
        self.how[idx].is_some()
    }

    /// The context from the search source to `target`, if `target` was reached.
    pub fn witness(&self, solver: &Solver, target: usize) -> Option<RunTree> {
        self.how[target]?;
        let space = &solver.space;
        let derived = solver.derivation().ok()?;
        let mut path = vec![target];
        let mut at = target;
        loop {
            at = match self.how[at].expect("on the spine") {
                Fwd::Source => break,
                Fwd::Step { parent, .. } | Fwd::Left { parent, .. } | Fwd::Right { parent, .. } => {
                    parent as usize
                }
            };
            path.push(at);
        }
        path.reverse();
        debug_assert_eq!(path[0], self.source);

        let mut tree = RunTree::new(RunMode::Context(space.decode(target)), space.decode(self.source));
        let mut node = 0;
        for &next in &path[1..] {
            node = match self.how[next].unwrap() {
                Fwd::Source => unreachable!(),
                Fwd::Step { t, .. } => tree.attach(node, t as usize, vec![space.decode(next)])[0],
                Fwd::Left { t, sibling, .. } => {
                    let ids = tree.attach(
                        node,
                        t as usize,
                        vec![space.decode(next), space.decode(sibling as usize)],
                    );
                    derived.expand(solver, &mut tree, ids[1], sibling as usize);
                    ids[0]
                }
                Fwd::Right { t, sibling, .. } => {
                    let ids = tree.attach(
                        node,
                        t as usize,
                        vec![space.decode(sibling as usize), space.decode(next)],
                    );
                    derived.expand(solver, &mut tree, ids[0], sibling as usize);
                    ids[1]
                }
            };
        }
        Some(tree)
    }
}
