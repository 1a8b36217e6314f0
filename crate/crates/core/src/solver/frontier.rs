use std::collections::{HashMap, VecDeque};

use crate::model::{Configuration, RunMode, RunTree, System};

use super::{SolveError, Solver, Space, Step};

#[derive(Debug, Clone, Copy)]
enum Expand {
    Step { t: u32, child: u32 },
    Split { t: u32, left: u32, right: u32 },
    Close,
}

/// How a frontier was obtained from its parent: which member (by position in
/// the parent's sorted key) was expanded, and how.
#[derive(Debug, Clone, Copy)]
struct Move {
    parent: usize,
    pos: usize,
    expand: Expand,
}

/// Open-leaf multisets of partial runs from a fixed root, each realisable
/// by a concrete partial run (see [`FrontierSet::witness`]).
#[derive(Debug, Clone)]
pub struct FrontierSet {
    root: Configuration,
    space: Space,
    keys: Vec<Vec<u32>>,
    moves: Vec<Option<Move>>,
    /// Matching frontier ids, sorted by their decoded contents.
    matching: Vec<usize>,
    /// Total number of frontiers explored, matching or not.
    pub explored: usize,
}

impl FrontierSet {
    pub fn len(&self) -> usize {
        self.matching.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matching.is_empty()
    }

    fn decode(&self, id: usize) -> Vec<Configuration> {
        let mut out: Vec<Configuration> = self.keys[id].iter().map(|&i| self.space.decode(i as usize)).collect();
        out.sort();
        out
    }

    /// Matching frontiers; each is a sorted multiset of configurations.
    pub fn frontiers(&self) -> Vec<Vec<Configuration>> {
        self.matching.iter().map(|&id| self.decode(id)).collect()
    }

    pub fn contains(&self, frontier: &[Configuration]) -> bool {
        let mut want = frontier.to_vec();
        want.sort();
        self.frontiers().contains(&want)
    }

    /// A partial run from the root whose open leaves are the `i`-th frontier.
    pub fn witness(&self, i: usize) -> RunTree {
        let mut path = Vec::new();
        let mut at = self.matching[i];
        while let Some(m) = self.moves[at] {
            path.push(m);
            at = m.parent;
        }
        path.reverse();
        let mut tree = RunTree::new(RunMode::Partial, self.root.clone());
        let mut open: Vec<(u32, usize)> = vec![(self.keys[0][0], 0)];
        for m in path {
            let (_, node) = open.remove(m.pos);
            match m.expand {
                Expand::Close => {}
                Expand::Step { t, child } => {
                    let ids = tree.attach(node, t as usize, vec![self.space.decode(child as usize)]);
                    open.push((child, ids[0]));
                }
                Expand::Split { t, left, right } => {
                    let cs = vec![
                        self.space.decode(left as usize),
                        self.space.decode(right as usize),
                    ];
                    let ids = tree.attach(node, t as usize, cs);
                    open.push((left, ids[0]));
                    open.push((right, ids[1]));
                }
            }
            open.sort_by_key(|&(c, _)| c);
        }
        tree
    }
}

fn replace(key: &[u32], pos: usize, with: &[u32]) -> Vec<u32> {
    let mut out: Vec<u32> = key[..pos].iter().chain(&key[pos + 1..]).chain(with).copied().collect();
    out.sort_unstable();
    out
}

/// Breadth-first search over multisets of open leaves reachable from `root`,
/// keeping at most `width_cap` open leaves at a time. Returns the frontiers
/// whose states all lie in `filter` (every frontier when `filter` is `None`).
pub fn leaf_frontiers(
    sys: &System,
    root: &Configuration,
    width_cap: usize,
    filter: Option<&[&str]>,
) -> Result<FrontierSet, SolveError> {
    Solver::new(sys)?.leaf_frontiers(root, width_cap, filter)
}

impl Solver<'_> {
    pub fn leaf_frontiers(
        &self,
        root: &Configuration,
        width_cap: usize,
        filter: Option<&[&str]>,
    ) -> Result<FrontierSet, SolveError> {
        let space = &self.space;
        let start = space.encode(root)? as u32;
        let allowed: Option<Vec<usize>> = filter
            .map(|f| f.iter().map(|s| space.state_id(s)).collect::<Result<_, _>>())
            .transpose()?;
        let closable = self.initial.map(|q0| space.join(q0, 0) as u32);

        let mut keys = vec![vec![start]];
        let mut moves = vec![None];
        let mut index: HashMap<Vec<u32>, usize> = HashMap::from([(vec![start], 0)]);
        let mut queue = VecDeque::from([0usize]);

        while let Some(id) = queue.pop_front() {
            let key = keys[id].clone();
            let mut found: Vec<(Vec<u32>, Move)> = Vec::new();
            for pos in 0..key.len() {
                if pos > 0 && key[pos] == key[pos - 1] {
                    continue;
                }
                let c = key[pos] as usize;
                let mv = |expand| Move { parent: id, pos, expand };
                if Some(key[pos]) == closable {
                    found.push((replace(&key, pos, &[]), mv(Expand::Close)));
                }
                for &t in &self.outgoing[space.state_of(c)] {
                    match self.steps[t] {
                        Step::Branch { left, right, .. } => {
                            if key.len() + 1 > width_cap {
                                continue;
                            }
                            let v = space.vec_of(c);
                            for m1 in space.below(v) {
                                let m2 = space.sub(v, m1).unwrap();
                                let (l, r) = (space.join(left, m1) as u32, space.join(right, m2) as u32);
                                let expand = Expand::Split { t: t as u32, left: l, right: r };
                                found.push((replace(&key, pos, &[l, r]), mv(expand)));
                            }
                        }
                        ref step => {
                            if let Some(n) = space.fire(c, step) {
                                let expand = Expand::Step { t: t as u32, child: n as u32 };
                                found.push((replace(&key, pos, &[n as u32]), mv(expand)));
                            }
                        }
                    }
                }
            }
            for (k, m) in found {
                if !index.contains_key(&k) {
                    index.insert(k.clone(), keys.len());
                    queue.push_back(keys.len());
                    keys.push(k);
                    moves.push(Some(m));
                }
            }
        }

        let mut matching: Vec<usize> = (0..keys.len())
            .filter(|&id| match &allowed {
                None => true,
                Some(states) => keys[id]
                    .iter()
                    .all(|&c| states.contains(&space.state_of(c as usize))),
            })
            .collect();
        let mut out = FrontierSet {
            root: root.clone(),
            space: space.clone(),
            explored: keys.len(),
            keys,
            moves,
            matching: Vec::new(),
        };
        matching.sort_by_cached_key(|&id| out.decode(id));
        out.matching = matching;
        Ok(out)
    }
}
