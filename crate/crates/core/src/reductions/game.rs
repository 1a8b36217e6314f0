use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use crate::model::Natural;

use super::ReductionError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Player {
    Exists,
    Forall,
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Player::Exists => "exists",
            Player::Forall => "forall",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GameMove {
    pub from: String,
    pub weight: Natural,
    pub to: String,
}

impl GameMove {
    pub fn new(from: &str, weight: Natural, to: &str) -> Self {
        GameMove {
            from: from.into(),
            weight,
            to: to.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GameConfiguration {
    pub node: String,
    pub counter: Natural,
}

impl GameConfiguration {
    pub fn new(node: &str, counter: Natural) -> Self {
        GameConfiguration {
            node: node.into(),
            counter,
        }
    }
}

impl fmt::Display for GameConfiguration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.node, self.counter)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CountdownGame {
    pub exists_nodes: Vec<String>,
    pub forall_nodes: Vec<String>,
    pub transitions: Vec<GameMove>,
}

impl CountdownGame {
    pub fn new<'a>(
        exists: impl IntoIterator<Item = &'a str>,
        forall: impl IntoIterator<Item = &'a str>,
    ) -> Self {
        CountdownGame {
            exists_nodes: exists.into_iter().map(String::from).collect(),
            forall_nodes: forall.into_iter().map(String::from).collect(),
            transitions: Vec::new(),
        }
    }

    pub fn with_move(mut self, from: &str, weight: Natural, to: &str) -> Self {
        self.transitions.push(GameMove::new(from, weight, to));
        self
    }

    /// All nodes, existential ones first.
    pub fn nodes(&self) -> impl Iterator<Item = &String> {
        self.exists_nodes.iter().chain(&self.forall_nodes)
    }

    pub fn owner(&self, node: &str) -> Option<Player> {
        if self.exists_nodes.iter().any(|n| n == node) {
            Some(Player::Exists)
        } else if self.forall_nodes.iter().any(|n| n == node) {
            Some(Player::Forall)
        } else {
            None
        }
    }

    /// Indices of the moves leaving `node`, in declaration order.
    pub fn moves_from(&self, node: &str) -> Vec<usize> {
        (0..self.transitions.len())
            .filter(|&i| self.transitions[i].from == node)
            .collect()
    }

    /// Checks the partition and the weights.
    pub fn check(&self) -> Result<(), ReductionError> {
        let mut seen = BTreeSet::new();
        for n in self.nodes() {
            if !seen.insert(n) {
                return Err(ReductionError::InvalidGame(format!("node {n} listed twice")));
            }
        }
        for (i, m) in self.transitions.iter().enumerate() {
            for end in [&m.from, &m.to] {
                if !seen.contains(end) {
                    return Err(ReductionError::InvalidGame(format!("move {i}: unknown node {end}")));
                }
            }
            if m.weight == 0 {
                return Err(ReductionError::InvalidGame(format!("move {i}: weight must be positive")));
            }
        }
        Ok(())
    }

    fn check_start(&self, start: &GameConfiguration) -> Result<(), ReductionError> {
        self.check()?;
        if self.owner(&start.node).is_none() {
            return Err(ReductionError::InvalidGame(format!("unknown start node {}", start.node)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameSolution {
    pub winner: Player,
    /// Chosen move (an index into the game's transitions) at every
    /// configuration of the winner's nodes reachable when the winner follows
    /// it. Configurations where the winner has no legal move are absent.
    pub strategy: BTreeMap<GameConfiguration, usize>,
}

/// Winning table: `wins[node][c]` says whether ∃ wins from `node(c)`.
pub(crate) struct Table {
    index: HashMap<String, usize>,
    wins: Vec<Vec<bool>>,
}

impl Table {
    pub fn exists_wins(&self, node: &str, counter: Natural) -> bool {
        self.wins[self.index[node]][counter as usize]
    }
}

pub(crate) fn win_table(game: &CountdownGame, max: Natural) -> Table {
    let names: Vec<&String> = game.nodes().collect();
    let index: HashMap<String, usize> = names.iter().enumerate().map(|(i, n)| ((*n).clone(), i)).collect();
    let moves: Vec<Vec<(Natural, usize)>> = names
        .iter()
        .map(|n| {
            game.moves_from(n)
                .into_iter()
                .map(|i| (game.transitions[i].weight, index[&game.transitions[i].to]))
                .collect()
        })
        .collect();
    let is_exists: Vec<bool> = names.iter().map(|n| game.owner(n) == Some(Player::Exists)).collect();
    let mut wins = vec![vec![false; max as usize + 1]; names.len()];
    for c in 0..=max as usize {
        for s in 0..names.len() {
            wins[s][c] = if c == 0 {
                true
            } else {
                let mut legal = moves[s].iter().filter(|(w, _)| *w as usize <= c).peekable();
                if is_exists[s] {
                    legal.any(|&(w, t)| wins[t][c - w as usize])
                } else {
                    legal.peek().is_some() && legal.all(|&(w, t)| wins[t][c - w as usize])
                }
            };
        }
    }
    Table { index, wins }
}

/// Solves the game from `start` by evaluating every configuration with a
/// counter at most `start.counter`, smallest counters first.
pub fn solve_countdown(game: &CountdownGame, start: &GameConfiguration) -> Result<GameSolution, ReductionError> {
    game.check_start(start)?;
    let table = win_table(game, start.counter);
    let winner = if table.exists_wins(&start.node, start.counter) {
        Player::Exists
    } else {
        Player::Forall
    };
    let good = |to: &str, c: Natural| table.exists_wins(to, c) == (winner == Player::Exists);

    let mut strategy = BTreeMap::new();
    let mut seen = BTreeSet::from([start.clone()]);
    let mut stack = vec![start.clone()];
    while let Some(at) = stack.pop() {
        if at.counter == 0 {
            continue;
        }
        let legal: Vec<usize> = game
            .moves_from(&at.node)
            .into_iter()
            .filter(|&i| game.transitions[i].weight <= at.counter)
            .collect();
        let follow = if game.owner(&at.node) == Some(winner) {
            let chosen = legal.into_iter().find(|&i| {
                let m = &game.transitions[i];
                good(&m.to, at.counter - m.weight)
            });
            match chosen {
                Some(i) => {
                    strategy.insert(at.clone(), i);
                    vec![i]
                }
                None => Vec::new(),
            }
        } else {
            legal
        };
        for i in follow {
            let m = &game.transitions[i];
            let next = GameConfiguration::new(&m.to, at.counter - m.weight);
            if seen.insert(next.clone()) {
                stack.push(next);
            }
        }
    }
    Ok(GameSolution { winner, strategy })
}

/// The name of the node prepended by [`normalize_game`] to pad the counter.
pub const START_NODE: &str = "#start";

/// Brings a game into the two-moves-per-node form with a start counter of
/// the form `2^n - 1`, without changing the winner.
///
/// A single move is duplicated. A node without moves gets two moves of
/// weight one above the start counter, which are never legal. A start
/// counter `c` that is not `2^n - 1` is padded by a fresh existential node
/// whose two moves subtract `2^n - 1 - c` and lead to the old start.
pub fn normalize_game(
    game: &CountdownGame,
    start: &GameConfiguration,
) -> Result<(CountdownGame, GameConfiguration), ReductionError> {
    game.check_start(start)?;
    for n in game.nodes() {
        if game.moves_from(n).len() > 2 {
            return Err(ReductionError::MoreThanTwoOutgoing(n.clone()));
        }
    }
    let mut out = game.clone();
    let mut start = start.clone();
    let target = start
        .counter
        .checked_add(1)
        .and_then(Natural::checked_next_power_of_two)
        .ok_or(ReductionError::TooLarge)?
        - 1;
    if target != start.counter {
        let mut fresh = START_NODE.to_string();
        while out.owner(&fresh).is_some() {
            fresh.push('\'');
        }
        let pad = target - start.counter;
        out.exists_nodes.push(fresh.clone());
        out.transitions.push(GameMove::new(&fresh, pad, &start.node));
        out.transitions.push(GameMove::new(&fresh, pad, &start.node));
        start = GameConfiguration::new(&fresh, target);
    }
    let never = start.counter.checked_add(1).ok_or(ReductionError::TooLarge)?;
    let nodes: Vec<String> = out.nodes().cloned().collect();
    for n in &nodes {
        match out.moves_from(n).as_slice() {
            [] => {
                out.transitions.push(GameMove::new(n, never, n));
                out.transitions.push(GameMove::new(n, never, n));
            }
            &[i] => {
                let m = out.transitions[i].clone();
                out.transitions.push(m);
            }
            _ => {}
        }
    }
    Ok((out, start))
}

pub(crate) fn is_normalized(game: &CountdownGame, start: &GameConfiguration) -> bool {
    game.nodes().all(|n| game.moves_from(n).len() == 2) && (start.counter + 1).is_power_of_two()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exists_counts_down() {
        let g = CountdownGame::new(["s"], []).with_move("s", 1, "s").with_move("s", 2, "s");
        let sol = solve_countdown(&g, &GameConfiguration::new("s", 3)).unwrap();
        assert_eq!(sol.winner, Player::Exists);
        assert!(sol.strategy.contains_key(&GameConfiguration::new("s", 3)));
    }

    #[test]
    fn forall_stuck() {
        let g = CountdownGame::new([], ["u"]).with_move("u", 2, "u").with_move("u", 3, "u");
        let sol = solve_countdown(&g, &GameConfiguration::new("u", 1)).unwrap();
        assert_eq!(sol.winner, Player::Forall);
        assert!(sol.strategy.is_empty());
    }

    #[test]
    fn forall_forced_single_move() {
        // only the weight-1 move is legal at u(2); it reaches s(1), which wins
        let g = CountdownGame::new(["s"], ["u"])
            .with_move("u", 1, "s")
            .with_move("u", 3, "s")
            .with_move("s", 1, "s")
            .with_move("s", 1, "s");
        let sol = solve_countdown(&g, &GameConfiguration::new("u", 2)).unwrap();
        assert_eq!(sol.winner, Player::Exists);
    }

    #[test]
    fn forall_strategy_avoids_zero() {
        let g = CountdownGame::new(["e"], ["a"])
            .with_move("a", 1, "e")
            .with_move("a", 2, "e")
            .with_move("e", 2, "e")
            .with_move("e", 2, "e");
        // from a(3), moving to e(2) loses for ∀ but e(1) is stuck
        let sol = solve_countdown(&g, &GameConfiguration::new("a", 3)).unwrap();
        assert_eq!(sol.winner, Player::Forall);
        assert_eq!(sol.strategy[&GameConfiguration::new("a", 3)], 1);
    }

    #[test]
    fn normalize_pads_start() {
        let g = CountdownGame::new(["s"], []).with_move("s", 2, "s").with_move("s", 3, "s");
        let (n, start) = normalize_game(&g, &GameConfiguration::new("s", 5)).unwrap();
        assert_eq!(start, GameConfiguration::new(START_NODE, 7));
        assert_eq!(n.moves_from(START_NODE).len(), 2);
        assert_eq!(n.transitions[n.moves_from(START_NODE)[0]].weight, 2);
        assert!(is_normalized(&n, &start));
        let before = solve_countdown(&g, &GameConfiguration::new("s", 5)).unwrap().winner;
        assert_eq!(solve_countdown(&n, &start).unwrap().winner, before);
    }

    #[test]
    fn normalize_is_identity_on_normal_games() {
        let g = CountdownGame::new(["s"], []).with_move("s", 2, "s").with_move("s", 3, "s");
        let start = GameConfiguration::new("s", 7);
        assert_eq!(normalize_game(&g, &start).unwrap(), (g, start));
    }

    #[test]
    fn normalize_dead_ends() {
        let g = CountdownGame::new(["s", "d"], ["u"]).with_move("s", 1, "d").with_move("u", 1, "s");
        let start = GameConfiguration::new("s", 3);
        let (n, s2) = normalize_game(&g, &start).unwrap();
        assert_eq!(n.moves_from("d").len(), 2);
        assert!(n.moves_from("d").iter().all(|&i| n.transitions[i].weight == 4));
        assert_eq!(n.moves_from("u").len(), 2);
        assert_eq!(
            solve_countdown(&n, &s2).unwrap().winner,
            solve_countdown(&g, &start).unwrap().winner
        );
    }

    #[test]
    fn rejects_bad_games() {
        let g = CountdownGame::new(["s"], ["s"]);
        assert!(matches!(g.check(), Err(ReductionError::InvalidGame(_))));
        let g = CountdownGame::new(["s"], []).with_move("s", 0, "s");
        assert!(matches!(g.check(), Err(ReductionError::InvalidGame(_))));
        let g = CountdownGame::new(["s"], [])
            .with_move("s", 1, "s")
            .with_move("s", 1, "s")
            .with_move("s", 1, "s");
        assert_eq!(
            normalize_game(&g, &GameConfiguration::new("s", 1)),
            Err(ReductionError::MoreThanTwoOutgoing("s".into()))
        );
    }
}
