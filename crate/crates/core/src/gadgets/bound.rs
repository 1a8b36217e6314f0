use crate::model::{Natural, System, TestOp, Transition};

use super::{skeleton, Fresh, GadgetError};

/// Moves the system to a larger bound `new_bound`, keeping the old bound `B`
/// in force with explicit `c <= B` tests.
///
/// Only a transition that can increase a counter can push it past `B`, so
/// such a transition is redirected to a fresh state and followed by a chain
/// of tests on the counters it may increase. Branches split the parent's
/// vector and never need a chain.
pub fn raise_bound(sys: &System, new_bound: Natural) -> Result<System, GadgetError> {
    let old = sys.bound.ok_or(GadgetError::Unbounded)?;
    if new_bound < old {
        return Err(GadgetError::BoundDecrease { old, new: new_bound });
    }
    let mut out = skeleton(sys);
    out.bound = Some(new_bound);
    let mut fresh = Fresh::new(sys, "b");
    for t in &sys.transitions {
        let growing: Vec<usize> = match t {
            Transition::Unary { delta, .. } => (0..delta.len()).filter(|&i| delta[i] > 0).collect(),
            Transition::Double { .. } => vec![0],
            _ => Vec::new(),
        };
        if growing.is_empty() || new_bound == old {
            out.push(t.clone());
            continue;
        }
        let target = t.to_state().expect("non-branch transition").to_string();
        let mut at = fresh.state(&mut out);
        out.push(retarget(t, &at));
        for (k, &i) in growing.iter().enumerate() {
            let next = if k + 1 == growing.len() {
                target.clone()
            } else {
                fresh.state(&mut out)
            };
            out.push(Transition::test(&at, &next, i + 1, TestOp::AtMost, old));
            at = next;
        }
    }
    Ok(out)
}

fn retarget(t: &Transition, to: &str) -> Transition {
    let mut t = t.clone();
    match &mut t {
        Transition::Unary { to: dst, .. }
        | Transition::Test { to: dst, .. }
        | Transition::Double { to: dst, .. }
        | Transition::Halve { to: dst, .. } => *dst = to.to_string(),
        Transition::Branch { .. } => unreachable!(),
    }
    t
}
