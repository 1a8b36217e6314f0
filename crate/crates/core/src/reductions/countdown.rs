use crate::gadgets::gadget_branch_copy;
use crate::model::{Configuration, Natural, System, TestOp, Transition};

use super::game::{is_normalized, CountdownGame, GameConfiguration};
use super::ReductionError;

/// A 1-dimensional branching system with doubling and halving whose root
/// is accepted exactly when the existential player wins the game.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountdownReduction {
    pub system: System,
    pub root: Configuration,
    /// The `M` of the branch-copy gadgets.
    pub gadget_m: Natural,
}

/// Reduces a normalized countdown game to acceptance.
///
/// Game nodes become states holding the counter. An existential node
/// subtracts the weight of its chosen move. A universal node copies the
/// counter into two branches with a branch-copy gadget and each branch
/// subtracts the weight of one move. Every game node may move to the
/// initial state, so a branch closes when its counter reaches zero.
///
/// When only the lighter move of a universal node is legal, the player
/// must take it, so the branch of the heavier move is allowed to close
/// whenever its counter is below that weight.
pub fn reduce_countdown(game: &CountdownGame, start: &GameConfiguration) -> Result<CountdownReduction, ReductionError> {
    build(game, start, true)
}

/// The same construction without the guard on the heavier move. It rejects
/// positions where a universal node has exactly one legal move, even when
/// the existential player wins through that move.
pub fn reduce_countdown_unguarded(
    game: &CountdownGame,
    start: &GameConfiguration,
) -> Result<CountdownReduction, ReductionError> {
    build(game, start, false)
}

fn unused(taken: &System, base: &str) -> String {
    let mut name = base.to_string();
    while taken.has_state(&name) {
        name.push('\'');
    }
    name
}

fn neg(weight: Natural) -> Result<i64, ReductionError> {
    i64::try_from(weight).map(|w| -w).map_err(|_| ReductionError::TooLarge)
}

fn build(game: &CountdownGame, start: &GameConfiguration, guard: bool) -> Result<CountdownReduction, ReductionError> {
    game.check()?;
    if game.owner(&start.node).is_none() || !is_normalized(game, start) {
        return Err(ReductionError::NotNormalized);
    }
    let m = (start.counter + 1).max(2);
    let gadget = gadget_branch_copy(m)?;

    let mut sys = System::new(1, Some(gadget.declared_bound));
    for n in game.nodes() {
        sys.add_state(n);
    }
    let q0 = unused(&sys, "q0");
    sys.add_state(&q0);
    sys.initial = Some(q0.clone());

    for (k, r) in game.forall_nodes.iter().enumerate() {
        let mut prefix = format!("#g{k}.");
        while sys.states.iter().any(|s| s.starts_with(&prefix)) {
            prefix.insert(0, '#');
        }
        let rename = |s: &str| match s {
            "p" => r.clone(),
            "q0" => q0.clone(),
            _ => format!("{prefix}{s}"),
        };
        for s in &gadget.system.states {
            sys.add_state(&rename(s));
        }
        for t in &gadget.system.transitions {
            sys.push(t.map_states(rename));
        }
        let moves = game.moves_from(r);
        let exits: Vec<String> = gadget.exits.iter().map(|e| rename(e)).collect();
        for (exit, &i) in exits.iter().zip(&moves) {
            let mv = &game.transitions[i];
            sys.push(Transition::unary(exit, &[neg(mv.weight)?], &mv.to));
        }
        let (a, b) = (&game.transitions[moves[0]], &game.transitions[moves[1]]);
        if guard && a.weight != b.weight {
            let (heavy, exit) = if a.weight > b.weight {
                (a.weight, &exits[0])
            } else {
                (b.weight, &exits[1])
            };
            let drain = format!("{prefix}drain");
            let below = (heavy - 1).min(gadget.declared_bound);
            sys.add_state(&drain)
                .push(Transition::test(exit, &drain, 1, TestOp::AtMost, below))
                .push(Transition::unary(&drain, &[-1], &drain))
                .push(Transition::unary(&drain, &[0], &q0));
        }
    }
    for r in &game.exists_nodes {
        for i in game.moves_from(r) {
            let mv = &game.transitions[i];
            sys.push(Transition::unary(r, &[neg(mv.weight)?], &mv.to));
        }
    }
    let nodes: Vec<String> = game.nodes().cloned().collect();
    for r in &nodes {
        sys.push(Transition::unary(r, &[0], &q0));
    }
    Ok(CountdownReduction {
        system: sys,
        root: Configuration::new(start.node.as_str(), [start.counter]),
        gadget_m: m,
    })
}
