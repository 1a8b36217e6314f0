use crate::model::{Delta, Natural, System, TestOp, Transition};

use super::GadgetHandle;

/// The 2-dimensional copy gadget with bound `M(M+2)`: from `p(n, m)` with
/// `n, m <= M`, the only reachable configuration in `q` is `q(n, n)`.
///
/// `p` empties the second counter; `r1` moves the first counter into the
/// second scaled by `M+2`; `r2` moves it back one unit at a time, leaving one
/// copy behind per unit. The final `c2 <= M` test only passes once `r2` has
/// drained all the scaled units.
pub fn gadget_copy2(m: Natural) -> GadgetHandle {
    let bound = m * (m + 2);
    let k = m as Delta;
    let mut sys = System::new(2, Some(bound));
    sys.add_states(["p", "r1", "r2", "q"])
        .push(Transition::unary("p", &[0, -1], "p"))
        .push(Transition::test("p", "r1", 2, TestOp::Equal, 0))
        .push(Transition::unary("r1", &[-1, k + 2], "r1"))
        .push(Transition::test("r1", "r2", 1, TestOp::Equal, 0))
        .push(Transition::unary("r2", &[1, -(k + 1)], "r2"))
        .push(Transition::test("r2", "q", 2, TestOp::AtMost, m));
    GadgetHandle {
        system: sys,
        entry: "p".into(),
        exits: vec!["q".into()],
        declared_bound: bound,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{validate_system, Configuration};
    use crate::solver::Solver;

    #[test]
    fn shape_for_m4() {
        let g = gadget_copy2(4);
        assert_eq!(g.system.bound, Some(24));
        assert_eq!(g.declared_bound, 24);
        assert_eq!(g.system.states, ["p", "r1", "r2", "q"]);
        assert_eq!(g.system.transitions.len(), 6);
        assert_eq!(g.system.transitions[2], Transition::unary("r1", &[-1, 6], "r1"));
        assert_eq!(g.system.transitions[4], Transition::unary("r2", &[1, -5], "r2"));
        assert!(validate_system(&g.system).is_ok());
    }

    #[test]
    fn copies_exactly() {
        for m in [1, 2, 3] {
            let g = gadget_copy2(m);
            let solver = Solver::new(&g.system).unwrap();
            for n in 0..=m {
                for start in 0..=m {
                    let from = Configuration::new("p", [n, start]);
                    for a in 0..=g.declared_bound {
                        for b in 0..=g.declared_bound {
                            let to = Configuration::new("q", [a, b]);
                            let want = a == n && b == n;
                            assert_eq!(solver.reach_linear(&from, &to).unwrap().reachable, want);
                        }
                    }
                }
            }
        }
    }
}
