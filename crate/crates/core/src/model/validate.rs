use std::collections::HashSet;
use std::fmt;

use super::system::{System, TestOp, Transition};

/// A single broken invariant of a system or run tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
    pub message: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ViolationKind {
    ZeroDimension,
    DuplicateState,
    DanglingState,
    DimensionMismatch,
    CounterOutOfRange,
    ScalingNeedsDimensionOne,
    TestWithoutBound,
    TestValueExceedsBound,
    MissingInitialState,
    UnknownInitialState,
    // run trees
    UnknownTransition,
    BadStep,
    BadArity,
    OutOfBound,
    BadLeaf,
}

/// Outcome of a validation pass: empty means ok.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, kind: ViolationKind) -> bool {
        self.violations.iter().any(|v| v.kind == kind)
    }

    pub(crate) fn push(&mut self, kind: ViolationKind, message: impl Into<String>) {
        self.violations.push(Violation {
            kind,
            message: message.into(),
        });
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return f.write_str("ok");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{}", v.message)?;
        }
        Ok(())
    }
}

pub fn validate_system(sys: &System) -> ValidationReport {
    let mut report = ValidationReport::default();
    if sys.dimension == 0 {
        report.push(ViolationKind::ZeroDimension, "dimension must be positive");
    }
    let mut seen = HashSet::new();
    for s in &sys.states {
        if !seen.insert(s.as_str()) {
            report.push(ViolationKind::DuplicateState, format!("state `{s}` declared twice"));
        }
    }
    for (i, t) in sys.transitions.iter().enumerate() {
        for s in t.states() {
            if !seen.contains(s) {
                report.push(
                    ViolationKind::DanglingState,
                    format!("transition {i} refers to undeclared state `{s}`"),
                );
            }
        }
        match t {
            Transition::Unary { delta, .. } if delta.len() != sys.dimension => report.push(
                ViolationKind::DimensionMismatch,
                format!(
                    "transition {i} has a {}-component vector in dimension {}",
                    delta.len(),
                    sys.dimension
                ),
            ),
            Transition::Test {
                counter, op, value, ..
            } => {
                if *counter == 0 || *counter > sys.dimension {
                    report.push(
                        ViolationKind::CounterOutOfRange,
                        format!("transition {i} tests c{counter} outside 1..{}", sys.dimension),
                    );
                }
                if *op != TestOp::AtLeast {
                    match sys.bound {
                        None => report.push(
                            ViolationKind::TestWithoutBound,
                            format!("transition {i}: `{op}` tests require a bound"),
                        ),
                        Some(b) if *value > b => report.push(
                            ViolationKind::TestValueExceedsBound,
                            format!("transition {i} tests against {value} above the bound {b}"),
                        ),
                        _ => {}
                    }
                }
            }
            Transition::Double { .. } | Transition::Halve { .. } if sys.dimension != 1 => report
                .push(
                    ViolationKind::ScalingNeedsDimensionOne,
                    format!("transition {i}: doubling requires d=1"),
                ),
            _ => {}
        }
    }
    match &sys.initial {
        Some(q0) if !seen.contains(q0.as_str()) => report.push(
            ViolationKind::UnknownInitialState,
            format!("initial state `{q0}` is not declared"),
        ),
        None if sys.has_branching() => report.push(
            ViolationKind::MissingInitialState,
            "branching transitions require an initial state",
        ),
        _ => {}
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gadgets::gadget_copy2;

    #[test]
    fn copy_gadget_is_valid() {
        let sys = gadget_copy2(4).system;
        assert_eq!(sys.bound, Some(24));
        assert_eq!(sys.states, ["p", "r1", "r2", "q"]);
        assert!(validate_system(&sys).is_ok());
    }

    #[test]
    fn empty_system_is_valid() {
        assert!(validate_system(&System::new(1, Some(0))).is_ok());
    }

    #[test]
    fn doubling_in_two_dimensions() {
        let mut sys = System::new(2, Some(4));
        sys.add_states(["p", "q"]).push(Transition::double("p", "q"));
        let report = validate_system(&sys);
        assert!(report.has(ViolationKind::ScalingNeedsDimensionOne));
        assert!(report.to_string().contains("doubling requires d=1"));
    }

    #[test]
    fn dangling_state_and_missing_initial() {
        let mut sys = System::new(1, Some(4));
        sys.add_states(["p"]).push(Transition::branch("p", "p", "x"));
        let report = validate_system(&sys);
        assert!(report.has(ViolationKind::DanglingState));
        assert!(report.has(ViolationKind::MissingInitialState));
    }

    #[test]
    fn upper_tests_need_a_bound() {
        let mut sys = System::new(1, None);
        sys.add_states(["p", "q"])
            .push(Transition::test("p", "q", 1, TestOp::AtLeast, 3))
            .push(Transition::test("p", "q", 1, TestOp::AtMost, 3));
        let report = validate_system(&sys);
        assert_eq!(report.violations.len(), 1);
        assert!(report.has(ViolationKind::TestWithoutBound));

        let mut sys = System::new(1, Some(2));
        sys.add_states(["p", "q"])
            .push(Transition::test("p", "q", 2, TestOp::Equal, 3));
        let report = validate_system(&sys);
        assert!(report.has(ViolationKind::CounterOutOfRange));
        assert!(report.has(ViolationKind::TestValueExceedsBound));
    }
}
