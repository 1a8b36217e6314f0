//! Brute-force oracles and random instance generators shared by the
//! integration tests. Nothing here calls into the solver; firing rules are
//! re-implemented directly from the model definitions.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap, HashSet};

use bobrvass::reductions::{CountdownGame, GameConfiguration, Player};
use bobrvass::{Configuration, System, TestOp, Transition};
use rand::seq::SliceRandom;
use rand::Rng;

pub type Config = (String, Vec<u64>);

pub fn cfg(state: &str, v: &[u64]) -> Configuration {
    Configuration::new(state, v)
}

pub fn key(c: &Configuration) -> Config {
    (c.state.clone(), c.vector.clone())
}

/// All vectors of `{0..=b}^d`.
pub fn vectors(d: usize, b: u64) -> Vec<Vec<u64>> {
    let mut out = vec![vec![]];
    for _ in 0..d {
        let mut next = Vec::new();
        for v in &out {
            for x in 0..=b {
                let mut w = v.clone();
                w.push(x);
                next.push(w);
            }
        }
        out = next;
    }
    out
}

pub fn all_configs(sys: &System) -> Vec<Config> {
    let b = sys.bound.expect("oracles need a bound");
    let vs = vectors(sys.dimension, b);
    sys.states
        .iter()
        .flat_map(|s| vs.iter().map(move |v| (s.clone(), v.clone())))
        .collect()
}

/// The successor of `v` in `state` under a non-branching transition.
pub fn step(sys: &System, state: &str, v: &[u64], t: &Transition) -> Option<Config> {
    let b = sys.bound.unwrap_or(u64::MAX) as i128;
    match t {
        Transition::Unary { from, delta, to } if from == state => {
            let mut w = Vec::new();
            for (x, d) in v.iter().zip(delta) {
                let y = *x as i128 + *d as i128;
                if y < 0 || y > b {
                    return None;
                }
                w.push(y as u64);
            }
            Some((to.clone(), w))
        }
        Transition::Test {
            from,
            to,
            counter,
            op,
            value,
        } if from == state => {
            let x = v[counter - 1];
            let ok = match op {
                TestOp::AtLeast => x >= *value,
                TestOp::AtMost => x <= *value,
                TestOp::Equal => x == *value,
            };
            ok.then(|| (to.clone(), v.to_vec()))
        }
        Transition::Double { from, to } if from == state => {
            let y = v[0] as i128 * 2;
            (y <= b).then(|| (to.clone(), vec![y as u64]))
        }
        Transition::Halve { from, to } if from == state => v[0].is_multiple_of(2).then(|| (to.clone(), vec![v[0] / 2])),
        _ => None,
    }
}

/// All ways to write `v` as `l + r`.
pub fn splits(v: &[u64]) -> Vec<(Vec<u64>, Vec<u64>)> {
    let mut out = vec![(vec![], vec![])];
    for &x in v {
        let mut next = Vec::new();
        for (l, r) in &out {
            for a in 0..=x {
                let (mut l2, mut r2) = (l.clone(), r.clone());
                l2.push(a);
                r2.push(x - a);
                next.push((l2, r2));
            }
        }
        out = next;
    }
    out
}

/// Successors along a linear run, by breadth-first search.
pub fn linear_targets(sys: &System, src: &Config) -> HashSet<Config> {
    let mut seen = HashSet::from([src.clone()]);
    let mut todo = vec![src.clone()];
    while let Some((s, v)) = todo.pop() {
        for t in &sys.transitions {
            if let Some(n) = step(sys, &s, &v, t) {
                if seen.insert(n.clone()) {
                    todo.push(n);
                }
            }
        }
    }
    seen
}

/// Kleene iteration for the derivable set.
pub fn derivable(sys: &System) -> HashSet<Config> {
    let mut d = HashSet::new();
    let Some(q0) = &sys.initial else { return d };
    d.insert((q0.clone(), vec![0; sys.dimension]));
    let all = all_configs(sys);
    loop {
        let mut grew = false;
        for (s, v) in &all {
            let c = (s.clone(), v.clone());
            if d.contains(&c) {
                continue;
            }
            let ok = sys.transitions.iter().any(|t| match t {
                Transition::Branch { from, left, right } if from == s => splits(v)
                    .into_iter()
                    .any(|(l, r)| d.contains(&(left.clone(), l)) && d.contains(&(right.clone(), r))),
                Transition::Branch { .. } => false,
                _ => step(sys, s, v, t).is_some_and(|n| d.contains(&n)),
            });
            if ok {
                d.insert(c);
                grew = true;
            }
        }
        if !grew {
            return d;
        }
    }
}

/// Kleene iteration for the sources of contexts with a leaf at `target`.
pub fn context_sources(sys: &System, target: &Config, d: &HashSet<Config>) -> HashSet<Config> {
    let mut s = HashSet::from([target.clone()]);
    let all = all_configs(sys);
    loop {
        let mut grew = false;
        for (st, v) in &all {
            let c = (st.clone(), v.clone());
            if s.contains(&c) {
                continue;
            }
            let ok = sys.transitions.iter().any(|t| match t {
                Transition::Branch { from, left, right } if from == st => splits(v).into_iter().any(|(l, r)| {
                    let (lc, rc) = ((left.clone(), l), (right.clone(), r));
                    (s.contains(&lc) && d.contains(&rc)) || (d.contains(&lc) && s.contains(&rc))
                }),
                Transition::Branch { .. } => false,
                _ => step(sys, st, v, t).is_some_and(|n| s.contains(&n)),
            });
            if ok {
                s.insert(c);
                grew = true;
            }
        }
        if !grew {
            return s;
        }
    }
}

/// Full relation `{(c, d) : c →* d}` as a map from target to sources.
pub fn context_table(sys: &System) -> HashMap<Config, HashSet<Config>> {
    let d = derivable(sys);
    all_configs(sys)
        .into_iter()
        .map(|t| {
            let s = context_sources(sys, &t, &d);
            (t, s)
        })
        .collect()
}

/// Depth-first enumeration of frontier multisets under a width cap.
pub fn frontiers(sys: &System, root: &Config, width: usize) -> BTreeSet<Vec<Config>> {
    let q0 = sys.initial.clone().map(|q| (q, vec![0; sys.dimension]));
    let mut seen = BTreeSet::new();
    let mut stack = vec![vec![root.clone()]];
    seen.insert(vec![root.clone()]);
    while let Some(f) = stack.pop() {
        for i in 0..f.len() {
            let rest: Vec<Config> = f.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, c)| c.clone()).collect();
            let (s, v) = &f[i];
            let mut next: Vec<Vec<Config>> = Vec::new();
            if Some(&f[i]) == q0.as_ref() {
                next.push(rest.clone());
            }
            for t in &sys.transitions {
                match t {
                    Transition::Branch { from, left, right } if from == s => {
                        if f.len() + 1 > width {
                            continue;
                        }
                        for (l, r) in splits(v) {
                            let mut g = rest.clone();
                            g.push((left.clone(), l));
                            g.push((right.clone(), r));
                            next.push(g);
                        }
                    }
                    Transition::Branch { .. } => {}
                    _ => {
                        if let Some(n) = step(sys, s, v, t) {
                            let mut g = rest.clone();
                            g.push(n);
                            next.push(g);
                        }
                    }
                }
            }
            for mut g in next {
                g.sort();
                if seen.insert(g.clone()) {
                    stack.push(g);
                }
            }
        }
    }
    seen
}

/// Winner by expanding the game tree, memoized on configurations.
pub fn game_winner(game: &CountdownGame, start: &GameConfiguration) -> Player {
    fn exists_wins(game: &CountdownGame, node: &str, c: u64, memo: &mut HashMap<(String, u64), bool>) -> bool {
        if c == 0 {
            return true;
        }
        if let Some(&w) = memo.get(&(node.to_string(), c)) {
            return w;
        }
        let legal: Vec<_> = game
            .transitions
            .iter()
            .filter(|m| m.from == node && m.weight <= c)
            .collect();
        let exists = game.exists_nodes.iter().any(|n| n == node);
        let won = if exists {
            legal.iter().any(|m| exists_wins(game, &m.to, c - m.weight, memo))
        } else {
            !legal.is_empty() && legal.iter().all(|m| exists_wins(game, &m.to, c - m.weight, memo))
        };
        memo.insert((node.to_string(), c), won);
        won
    }
    if exists_wins(game, &start.node, start.counter, &mut HashMap::new()) {
        Player::Exists
    } else {
        Player::Forall
    }
}

/// Which kinds of transitions a random system may contain.
#[derive(Clone, Copy, Debug)]
pub struct Kinds {
    pub tests: bool,
    pub scaling: bool,
    pub branching: bool,
}

pub const PLAIN: Kinds = Kinds {
    tests: false,
    scaling: false,
    branching: false,
};

/// A random valid system with states `s0..`, initial state `q0` and the
/// given bound. Deltas stay small and a quarter of the transitions lead to
/// `q0`, so that a good share of configurations is derivable.
pub fn random_system<R: Rng>(rng: &mut R, dim: usize, bound: u64, states: usize, transitions: usize, kinds: Kinds) -> System {
    let mut names: Vec<String> = (0..states).map(|i| format!("s{i}")).collect();
    names.push("q0".into());
    let mut sys = System::new(dim, Some(bound)).with_initial("q0");
    for n in &names {
        sys.add_state(n);
    }
    let pick = |rng: &mut R| names.choose(rng).unwrap().clone();
    for _ in 0..transitions {
        let from = pick(rng);
        let to = if rng.gen_bool(0.25) { "q0".to_string() } else { pick(rng) };
        let roll = rng.gen_range(0..10);
        let t = if kinds.branching && roll <= 1 {
            Transition::branch(&from, &to, &pick(rng))
        } else if kinds.tests && roll <= 3 {
            let op = [TestOp::AtLeast, TestOp::AtMost, TestOp::Equal][rng.gen_range(0..3)];
            Transition::test(&from, &to, rng.gen_range(1..=dim), op, rng.gen_range(0..=bound))
        } else if kinds.scaling && roll <= 5 {
            if rng.gen_bool(0.5) {
                Transition::double(&from, &to)
            } else {
                Transition::halve(&from, &to)
            }
        } else {
            let delta: Vec<i64> = (0..dim).map(|_| rng.gen_range(-3..=3)).collect();
            Transition::unary(&from, &delta, &to)
        };
        sys.push(t);
    }
    sys
}

/// A random game with two moves per node and weights in `1..=max_weight`.
pub fn random_game<R: Rng>(rng: &mut R, nodes: usize, max_weight: u64) -> CountdownGame {
    let names: Vec<String> = (0..nodes).map(|i| format!("n{i}")).collect();
    let mut game = CountdownGame::default();
    for n in &names {
        if rng.gen_bool(0.5) {
            game.exists_nodes.push(n.clone());
        } else {
            game.forall_nodes.push(n.clone());
        }
    }
    for n in &names {
        for _ in 0..2 {
            let to = names.choose(rng).unwrap();
            game = game.with_move(n, rng.gen_range(1..=max_weight), to);
        }
    }
    game
}

/// Original-state reach table `(source, target) -> reachable` from the
/// solver, restricted to values `<= b`.
pub fn reach_table(sys: &System, states: &[String], b: u64) -> Vec<bool> {
    let solver = bobrvass::Solver::new(sys).unwrap();
    let vs = vectors(sys.dimension, b);
    let mut out = Vec::new();
    for s in states {
        for v in &vs {
            let targets = solver.targets_of(&cfg(s, v)).unwrap();
            for t in states {
                for w in &vs {
                    out.push(targets.contains(&cfg(t, w)));
                }
            }
        }
    }
    out
}
