use thiserror::Error;

use super::system::{Configuration, Natural, System, TestOp, Transition};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FireError {
    #[error("transition not applicable: {0}")]
    Inapplicable(Inapplicable),
    #[error("configuration is in state `{found}` but the transition starts in `{expected}`")]
    WrongState { expected: String, found: String },
    #[error("branching transitions need an explicit split")]
    BranchNotUnary,
    #[error("expected a branching transition")]
    NotBranch,
    #[error("split does not add up to {expected} or leaves the bound: left {left:?}, right {right:?}")]
    BadSplit {
        expected: Configuration,
        left: Vec<Natural>,
        right: Vec<Natural>,
    },
    #[error("vector has {found} components, system has dimension {expected}")]
    DimensionMismatch { expected: usize, found: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Inapplicable {
    #[error("counter c{0} would become negative")]
    Negative(usize),
    #[error("counter c{counter} would exceed the bound {bound}")]
    BoundExceeded { counter: usize, bound: Natural },
    #[error("counter c{counter} would overflow")]
    Overflow { counter: usize },
    #[error("test c{counter} {op} {value} fails")]
    TestFailed {
        counter: usize,
        op: TestOp,
        value: Natural,
    },
    #[error("cannot halve an odd value")]
    Odd,
    #[error("scaling transitions need dimension 1")]
    NotDimensionOne,
    #[error("test refers to counter c{0} outside the dimension")]
    BadCounter(usize),
}

fn check_value(sys: &System, counter: usize, value: i128) -> Result<Natural, Inapplicable> {
    if value < 0 {
        return Err(Inapplicable::Negative(counter));
    }
    let v = Natural::try_from(value).map_err(|_| Inapplicable::Overflow { counter })?;
    match sys.bound {
        Some(bound) if v > bound => Err(Inapplicable::BoundExceeded { counter, bound }),
        _ => Ok(v),
    }
}

/// Applies a non-branching transition. Deterministic: a configuration and a
/// transition determine at most one successor.
pub fn fire(sys: &System, c: &Configuration, t: &Transition) -> Result<Configuration, FireError> {
    if c.vector.len() != sys.dimension {
        return Err(FireError::DimensionMismatch {
            expected: sys.dimension,
            found: c.vector.len(),
        });
    }
    if c.state != t.from_state() {
        return Err(FireError::WrongState {
            expected: t.from_state().to_owned(),
            found: c.state.clone(),
        });
    }
    let inapplicable = FireError::Inapplicable;
    let vector = match t {
        Transition::Branch { .. } => return Err(FireError::BranchNotUnary),
        Transition::Unary { delta, .. } => {
            if delta.len() != sys.dimension {
                return Err(FireError::DimensionMismatch {
                    expected: sys.dimension,
                    found: delta.len(),
                });
            }
            c.vector
                .iter()
                .zip(delta)
                .enumerate()
                .map(|(i, (&v, &z))| check_value(sys, i + 1, v as i128 + z as i128))
                .collect::<Result<Vec<_>, _>>()
                .map_err(inapplicable)?
        }
        Transition::Test {
            counter, op, value, ..
        } => {
            let v = *c
                .vector
                .get(counter.wrapping_sub(1))
                .ok_or(FireError::Inapplicable(Inapplicable::BadCounter(*counter)))?;
            if !op.holds(v, *value) {
                return Err(inapplicable(Inapplicable::TestFailed {
                    counter: *counter,
                    op: *op,
                    value: *value,
                }));
            }
            c.vector.clone()
        }
        Transition::Double { .. } => {
            if sys.dimension != 1 {
                return Err(inapplicable(Inapplicable::NotDimensionOne));
            }
            vec![check_value(sys, 1, c.vector[0] as i128 * 2).map_err(inapplicable)?]
        }
        Transition::Halve { .. } => {
            if sys.dimension != 1 {
                return Err(inapplicable(Inapplicable::NotDimensionOne));
            }
            if c.vector[0] % 2 == 1 {
                return Err(inapplicable(Inapplicable::Odd));
            }
            vec![c.vector[0] / 2]
        }
    };
    Ok(Configuration {
        state: t.to_state().unwrap().to_owned(),
        vector,
    })
}

/// Applies a branching transition with the given split of the vector.
pub fn fire_branch(
    sys: &System,
    c: &Configuration,
    t: &Transition,
    split: (&[Natural], &[Natural]),
) -> Result<(Configuration, Configuration), FireError> {
    let Transition::Branch { from, left, right } = t else {
        return Err(FireError::NotBranch);
    };
    if c.state != *from {
        return Err(FireError::WrongState {
            expected: from.clone(),
            found: c.state.clone(),
        });
    }
    let (l, r) = split;
    let bad = || FireError::BadSplit {
        expected: c.clone(),
        left: l.to_vec(),
        right: r.to_vec(),
    };
    if l.len() != c.vector.len() || r.len() != c.vector.len() {
        return Err(bad());
    }
    let sums_match = c
        .vector
        .iter()
        .zip(l.iter().zip(r))
        .all(|(&n, (&a, &b))| a.checked_add(b) == Some(n));
    if !sums_match || !sys.within_bound(l) || !sys.within_bound(r) {
        return Err(bad());
    }
    Ok((
        Configuration::new(left.clone(), l),
        Configuration::new(right.clone(), r),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn fig1() -> System {
        crate::gadgets::gadget_copy2(4).system
    }

    #[test]
    fn unary_loop_of_copy_gadget() {
        let sys = fig1();
        let t = Transition::unary("r1", &[-1, 6], "r1");
        let out = fire(&sys, &Configuration::new("r1", [3, 0]), &t).unwrap();
        assert_eq!(out, Configuration::new("r1", [2, 6]));
    }

    #[test]
    fn identity_update() {
        let mut sys = System::new(3, None);
        sys.add_states(["p", "q"]);
        let t = Transition::unary("p", &[0, 0, 0], "q");
        let out = fire(&sys, &sys.zero("p"), &t).unwrap();
        assert_eq!(out, sys.zero("q"));
    }

    #[test]
    fn halve_odd_is_inapplicable() {
        let mut sys = System::new(1, Some(15));
        sys.add_states(["p", "q"]);
        let err = fire(&sys, &Configuration::new("p", [5]), &Transition::halve("p", "q"));
        assert_eq!(err, Err(FireError::Inapplicable(Inapplicable::Odd)));
    }

    #[test]
    fn double_six() {
        let mut sys = System::new(1, Some(15));
        sys.add_states(["p", "q"]);
        let out = fire(&sys, &Configuration::new("p", [6]), &Transition::double("p", "q"));
        assert_eq!(out, Ok(Configuration::new("q", [12])));
        let out = fire(&sys, &Configuration::new("p", [8]), &Transition::double("p", "q"));
        assert!(matches!(
            out,
            Err(FireError::Inapplicable(Inapplicable::BoundExceeded { .. }))
        ));
    }

    #[test]
    fn wrong_state_and_branch_rejected() {
        let mut sys = System::new(1, Some(3));
        sys.add_states(["p", "q"]);
        let c = Configuration::new("q", [0]);
        assert!(matches!(
            fire(&sys, &c, &Transition::unary("p", &[1], "q")),
            Err(FireError::WrongState { .. })
        ));
        let c = Configuration::new("p", [0]);
        assert_eq!(
            fire(&sys, &c, &Transition::branch("p", "q", "q")),
            Err(FireError::BranchNotUnary)
        );
    }

    #[test]
    fn negative_component_is_inapplicable() {
        let mut sys = System::new(2, None);
        sys.add_states(["p"]);
        let out = fire(
            &sys,
            &Configuration::new("p", [1, 0]),
            &Transition::unary("p", &[0, -1], "p"),
        );
        assert_eq!(out, Err(FireError::Inapplicable(Inapplicable::Negative(2))));
    }

    #[test]
    fn branch_splits() {
        let mut sys = System::new(1, Some(256));
        sys.add_states(["p'", "r", "s0"]);
        let t = Transition::branch("p'", "r", "s0");
        let (l, r) = fire_branch(&sys, &Configuration::new("p'", [15]), &t, (&[3], &[12])).unwrap();
        assert_eq!(l, Configuration::new("r", [3]));
        assert_eq!(r, Configuration::new("s0", [12]));

        let t = Transition::branch("p", "q1", "q2");
        let (l, r) = fire_branch(&sys, &Configuration::new("p", [0]), &t, (&[0], &[0])).unwrap();
        assert_eq!((l.vector, r.vector), (vec![0], vec![0]));
        assert!(matches!(
            fire_branch(&sys, &Configuration::new("p", [5]), &t, (&[3], &[3])),
            Err(FireError::BadSplit { .. })
        ));
    }

    proptest! {
        #[test]
        fn unary_inverse_round_trip(
            v in prop::collection::vec(0u64..=20, 2),
            z in prop::collection::vec(-20i64..=20, 2),
        ) {
            let mut sys = System::new(2, Some(20));
            sys.add_states(["p", "q"]);
            let c = Configuration::new("p", v);
            let there = Transition::unary("p", &z, "q");
            let minus: Vec<i64> = z.iter().map(|x| -x).collect();
            let back = Transition::unary("q", &minus, "p");
            if let Ok(mid) = fire(&sys, &c, &there) {
                prop_assert_eq!(fire(&sys, &mid, &back), Ok(c));
            }
        }

        #[test]
        fn tests_never_change_vectors(
            v in prop::collection::vec(0u64..=10, 2),
            counter in 1usize..=2,
            op in prop::sample::select(vec![TestOp::AtLeast, TestOp::AtMost, TestOp::Equal]),
            value in 0u64..=10,
        ) {
            let mut sys = System::new(2, Some(10));
            sys.add_states(["p", "q"]);
            let c = Configuration::new("p", v.clone());
            match fire(&sys, &c, &Transition::test("p", "q", counter, op, value)) {
                Ok(out) => prop_assert_eq!(out.vector, v),
                Err(e) => prop_assert!(matches!(e, FireError::Inapplicable(_))),
            }
        }

        #[test]
        fn double_then_halve_is_identity(bound in 0u64..=64, frac in 0.0f64..=1.0) {
            let v = ((bound / 2) as f64 * frac) as u64;
            let mut sys = System::new(1, Some(bound));
            sys.add_states(["p", "q"]);
            let up = fire(&sys, &Configuration::new("p", [v]), &Transition::double("p", "q")).unwrap();
            let down = fire(&sys, &up, &Transition::halve("q", "p")).unwrap();
            prop_assert_eq!(down, Configuration::new("p", [v]));
        }
    }
}
