use crate::model::{Delta, System, TestOp, Transition};

use super::{skeleton, Fresh, GadgetError};

fn unit(dim: usize, counter: usize, amount: Delta) -> Vec<Delta> {
    let mut v = vec![0; dim];
    v[counter - 1] = amount;
    v
}

/// Replaces every test transition by plain updates through fresh states:
///
/// * `c >= n`: subtract `n`, add it back;
/// * `c <= n`: add `B - n`, subtract it back;
/// * `c = n`: subtract `n`, add `B`, subtract `B - n`. The first step needs
///   `c >= n` and the second `c - n + B <= B`.
///
/// Reachability between the original states is unchanged.
pub fn desugar_tests(sys: &System) -> Result<System, GadgetError> {
    let mut out = skeleton(sys);
    let mut fresh = Fresh::new(sys, "t");
    let d = sys.dimension;
    for t in &sys.transitions {
        let Transition::Test {
            from,
            to,
            counter,
            op,
            value,
        } = t
        else {
            out.push(t.clone());
            continue;
        };
        let (counter, value) = (*counter, *value as Delta);
        let bound = match (op, sys.bound) {
            (TestOp::AtLeast, b) => b.unwrap_or(0) as Delta,
            (_, None) => return Err(GadgetError::UpperTestWithoutBound),
            (_, Some(b)) if value as u64 > b => {
                return Err(GadgetError::TestValueExceedsBound {
                    value: value as u64,
                    bound: b,
                })
            }
            (_, Some(b)) => b as Delta,
        };
        let mid = fresh.state(&mut out);
        match op {
            TestOp::AtLeast => {
                out.push(Transition::unary(from, &unit(d, counter, -value), &mid));
                out.push(Transition::unary(&mid, &unit(d, counter, value), to));
            }
            TestOp::AtMost => {
                let gap = bound - value;
                out.push(Transition::unary(from, &unit(d, counter, gap), &mid));
                out.push(Transition::unary(&mid, &unit(d, counter, -gap), to));
            }
            TestOp::Equal => {
                let second = fresh.state(&mut out);
                out.push(Transition::unary(from, &unit(d, counter, -value), &mid));
                out.push(Transition::unary(&mid, &unit(d, counter, bound), &second));
                out.push(Transition::unary(&second, &unit(d, counter, value - bound), to));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{validate_system, Configuration};
    use crate::solver::Solver;

    #[test]
    fn lower_test_gadget() {
        let mut sys = System::new(1, Some(7));
        sys.add_states(["p", "q"])
            .push(Transition::test("p", "q", 1, TestOp::AtLeast, 3));
        let out = desugar_tests(&sys).unwrap();
        assert_eq!(out.states, ["p", "q", "#t0"]);
        assert_eq!(
            out.transitions,
            vec![
                Transition::unary("p", &[-3], "#t0"),
                Transition::unary("#t0", &[3], "q"),
            ]
        );
    }

    #[test]
    fn zero_lower_test_always_passes() {
        let mut sys = System::new(2, Some(3));
        sys.add_states(["p", "q"])
            .push(Transition::test("p", "q", 2, TestOp::AtLeast, 0));
        let out = desugar_tests(&sys).unwrap();
        assert!(out
            .transitions
            .iter()
            .all(|t| matches!(t, Transition::Unary { delta, .. } if delta == &[0, 0])));
        let solver = Solver::new(&out).unwrap();
        let c = |s: &str| Configuration::new(s, [1, 2]);
        assert!(solver.reach_linear(&c("p"), &c("q")).unwrap().reachable);
    }

    #[test]
    fn equality_uses_two_fresh_states() {
        let mut sys = System::new(1, Some(5));
        sys.add_states(["p", "q"])
            .push(Transition::test("p", "q", 1, TestOp::Equal, 2));
        let out = desugar_tests(&sys).unwrap();
        assert_eq!(out.states.len(), 4);
        assert!(validate_system(&out).is_ok());
        let solver = Solver::new(&out).unwrap();
        for v in 0..=5u64 {
            let ans = solver
                .reach_linear(&Configuration::new("p", [v]), &Configuration::new("q", [v]))
                .unwrap();
            assert_eq!(ans.reachable, v == 2, "value {v}");
        }
    }

    #[test]
    fn fresh_names_avoid_existing_states() {
        let mut sys = System::new(1, Some(5));
        sys.add_states(["p", "#t0"])
            .push(Transition::test("p", "#t0", 1, TestOp::AtMost, 2));
        let out = desugar_tests(&sys).unwrap();
        assert_eq!(out.states, ["p", "#t0", "#t1"]);
        assert!(validate_system(&out).is_ok());
    }

    #[test]
    fn errors() {
        let mut sys = System::new(1, Some(5));
        sys.add_states(["p"])
            .push(Transition::test("p", "p", 1, TestOp::AtMost, 6));
        assert_eq!(
            desugar_tests(&sys),
            Err(GadgetError::TestValueExceedsBound { value: 6, bound: 5 })
        );
        let mut sys = System::new(1, None);
        sys.add_states(["p"])
            .push(Transition::test("p", "p", 1, TestOp::Equal, 1));
        assert_eq!(desugar_tests(&sys), Err(GadgetError::UpperTestWithoutBound));
    }
}
