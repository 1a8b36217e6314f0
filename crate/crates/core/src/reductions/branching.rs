use std::collections::BTreeMap;

use crate::gadgets::Fresh;
use crate::model::{validate_system, Configuration, Natural, System, Transition};

use super::ReductionError;

/// The output of [`reduce_to_2brvass`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchingReduction {
    /// A 2-dimensional branching system without a bound.
    pub system: System,
    /// The bound `B` of the source system.
    pub source_bound: Natural,
    /// Each added state, mapped to the index of the source transition it
    /// belongs to. The added initial state maps to `None`.
    pub added: BTreeMap<String, Option<usize>>,
}

impl BranchingReduction {
    /// The image `p(x, 2B - x)` of a source configuration `p(x)`.
    pub fn encode(&self, c: &Configuration) -> Configuration {
        let b = self.source_bound;
        Configuration::new(c.state.as_str(), [c.vector[0], 2 * b - c.vector[0]])
    }
}

/// Replaces the bound of a 1-dimensional branching system by a second
/// counter: `p(x)` becomes `p(x, 2B - x)`.
///
/// A unary step `(u, k, v)` goes through `(k, -B - k)` and then `(0, B)`; the
/// first part fails exactly when `x + k` leaves `{0..B}`. A branch first
/// splits and then adds `B` to the second counter on both sides, so sums of
/// `2B` split into two sums of `2B`. The new initial state is entered from
/// `q0(0, 2B)` only.
pub fn reduce_to_2brvass(sys: &System) -> Result<BranchingReduction, ReductionError> {
    let report = validate_system(sys);
    if !report.is_ok() {
        return Err(ReductionError::Invalid(report));
    }
    if sys.dimension != 1 {
        return Err(ReductionError::NotDimensionOne);
    }
    if sys.has_scaling() {
        return Err(ReductionError::HasDoubling);
    }
    if sys.has_tests() {
        return Err(ReductionError::TestsNotDesugared);
    }
    let b = sys.bound.ok_or(ReductionError::Unbounded)?;
    let q0 = sys.initial.clone().ok_or(ReductionError::MissingInitialState)?;
    let big = i64::try_from(b)
        .ok()
        .filter(|b| b.checked_mul(2).is_some())
        .ok_or(ReductionError::TooLarge)?;

    let mut out = System::new(2, None);
    out.add_states(sys.states.iter().map(String::as_str));
    let mut fresh = Fresh::new(sys, "r");
    let mut added = BTreeMap::new();
    for (i, t) in sys.transitions.iter().enumerate() {
        match t {
            Transition::Unary { from, delta, to } => {
                let k = delta[0];
                let second = (-big).checked_sub(k).ok_or(ReductionError::TooLarge)?;
                let r = fresh.state(&mut out);
                added.insert(r.clone(), Some(i));
                out.push(Transition::unary(from, &[k, second], &r))
                    .push(Transition::unary(&r, &[0, big], to));
            }
            Transition::Branch { from, left, right } => {
                let (s1, s2) = (fresh.state(&mut out), fresh.state(&mut out));
                added.insert(s1.clone(), Some(i));
                added.insert(s2.clone(), Some(i));
                out.push(Transition::branch(from, &s1, &s2))
                    .push(Transition::unary(&s1, &[0, big], left))
                    .push(Transition::unary(&s2, &[0, big], right));
            }
            _ => unreachable!("tests and scaling were rejected above"),
        }
    }
    let init = fresh.state(&mut out);
    added.insert(init.clone(), None);
    out.push(Transition::unary(&q0, &[0, -2 * big], &init));
    out.initial = Some(init);
    Ok(BranchingReduction {
        system: out,
        source_bound: b,
        added,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{fire, TestOp};
    use crate::solver::Solver;

    #[test]
    fn unary_step_image() {
        let mut sys = System::new(1, Some(5)).with_initial("q0");
        sys.add_states(["u", "v"]).push(Transition::unary("u", &[2], "v"));
        let red = reduce_to_2brvass(&sys).unwrap();
        assert_eq!(red.system.bound, None);
        let (t1, t2) = (&red.system.transitions[0], &red.system.transitions[1]);
        let a = Configuration::new("u", [1, 9]);
        let b = fire(&red.system, &a, t1).unwrap();
        assert_eq!(b, Configuration::new("#r0", [3, 2]));
        assert_eq!(fire(&red.system, &b, t2).unwrap(), Configuration::new("v", [3, 7]));
        // 4 + 2 > 5 is blocked by the second counter
        assert!(fire(&red.system, &Configuration::new("u", [4, 6]), t1).is_err());
    }

    #[test]
    fn reachability_is_preserved() {
        let mut sys = System::new(1, Some(3)).with_initial("q0");
        sys.add_states(["p", "a", "b"])
            .push(Transition::branch("p", "a", "b"))
            .push(Transition::unary("a", &[1], "a"))
            .push(Transition::unary("b", &[-2], "q0"));
        let red = reduce_to_2brvass(&sys).unwrap();
        assert_eq!(red.added.len(), 5);
        let image = red.system.with_bound(Some(9));
        let src = Solver::new(&sys).unwrap();
        let dst = Solver::new(&image).unwrap();
        for n in 0..=3 {
            for m in 0..=3 {
                let (p, a) = (Configuration::new("p", [n]), Configuration::new("a", [m]));
                let want = src.reach_context(&p, &a).unwrap().reachable;
                let got = dst.reach_context(&red.encode(&p), &red.encode(&a)).unwrap().reachable;
                assert_eq!(want, got, "p({n}) to a({m})");
            }
        }
        let p = Configuration::new("p", [2]);
        assert!(dst.reach_context(&red.encode(&p), &red.encode(&p)).unwrap().reachable);
    }

    #[test]
    fn preconditions() {
        let mut sys = System::new(1, Some(3)).with_initial("q0");
        sys.push(Transition::double("q0", "q0"));
        assert_eq!(reduce_to_2brvass(&sys), Err(ReductionError::HasDoubling));
        let mut sys = System::new(1, Some(3)).with_initial("q0");
        sys.push(Transition::test("q0", "q0", 1, TestOp::AtLeast, 1));
        assert_eq!(reduce_to_2brvass(&sys), Err(ReductionError::TestsNotDesugared));
        let sys = System::new(1, Some(3));
        assert_eq!(reduce_to_2brvass(&sys), Err(ReductionError::MissingInitialState));
    }
}
