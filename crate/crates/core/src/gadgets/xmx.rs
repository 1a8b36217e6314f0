use crate::model::{Delta, Natural, System, TestOp, Transition};

use super::{log2_exact, GadgetError, GadgetHandle};

fn word(m: Natural) -> Result<u32, GadgetError> {
    match log2_exact(m) {
        Some(n) if n >= 1 => {}
        _ => return Err(GadgetError::NotPowerOfTwo(m)),
    }
    // keeps M^4 and M + M^2 + M^3 within range
    if m > 1 << 15 {
        return Err(GadgetError::TooLarge(m));
    }
    Ok(m.trailing_zeros())
}

fn xmx_bound(m: Natural) -> Natural {
    m + m * (m - 1) + m * m * (m - 1) + m * m * m * (m - 1)
}

/// Pushes the xMx transitions with the given state names: `r`, the
/// `q0..q{n-1}` chain and the exit.
fn push_xmx(sys: &mut System, m: Natural, p: &str, r: &str, chain: &[String], exit: &str) {
    let k = m as Delta;
    sys.push(Transition::unary(p, &[k + k * k + k * k * k], p))
        .push(Transition::unary(p, &[0], r))
        .push(Transition::unary(r, &[-1 - k * k * k], r))
        .push(Transition::test(r, &chain[0], 1, TestOp::AtMost, m * m * m + m * m));
    for i in 0..chain.len() {
        let next = chain.get(i + 1).map_or(exit, String::as_str);
        sys.push(Transition::halve(&chain[i], next));
    }
}

/// A 1-dimensional gadget computing `x ↦ x + Mx` on `{0..M-1}`, for `M` a
/// power of two.
///
/// `p` adds `M + M² + M³` some `a` times, `r` subtracts `1 + M³` some
/// `b <= a` times. The test forces `b = a`, leaving `x - a + Ma + M²a`, and
/// `n = log2 M` halvings succeed only when `M` divides it, that is `a = x`.
pub fn gadget_xmx(m: Natural) -> Result<GadgetHandle, GadgetError> {
    let n = word(m)?;
    let bound = xmx_bound(m);
    let mut sys = System::new(1, Some(bound));
    let qs: Vec<String> = (0..=n).map(|i| format!("q{i}")).collect();
    sys.add_states(["p", "r"]);
    for q in &qs {
        sys.add_state(q);
    }
    push_xmx(&mut sys, m, "p", "r", &qs[..n as usize], &qs[n as usize]);
    Ok(GadgetHandle {
        system: sys,
        entry: "p".into(),
        exits: vec![qs[n as usize].clone()],
        declared_bound: bound,
    })
}

/// A 1-dimensional branching gadget that copies `x` in `{0..M-1}` into two
/// leaves `q1(x)` and `q2(x)`.
///
/// After the xMx part reaches `p'(x + Mx)`, the branch splits the value as
/// `y + z`; `q1` admits only `y < M` and the halving chain to `q2` only
/// multiples of `M`, so the split is `(x, Mx)` and `q2` receives `x`.
///
/// The xMx states are named `x.r` and `x.q0..`; `q0` is the unused initial
/// state, so the gadget can stand alone as a system.
pub fn gadget_branch_copy(m: Natural) -> Result<GadgetHandle, GadgetError> {
    let n = word(m)? as usize;
    let bound = xmx_bound(m);
    let mut sys = System::new(1, Some(bound));
    let xs: Vec<String> = (0..n).map(|i| format!("x.q{i}")).collect();
    let ss: Vec<String> = (0..n).map(|i| format!("s{i}")).collect();
    sys.add_states(["p", "x.r"]);
    for s in &xs {
        sys.add_state(s);
    }
    sys.add_states(["p'", "r", "q1"]);
    for s in &ss {
        sys.add_state(s);
    }
    sys.add_states(["q2", "q0"]);
    sys.initial = Some("q0".into());

    push_xmx(&mut sys, m, "p", "x.r", &xs, "p'");
    sys.push(Transition::branch("p'", "r", &ss[0]))
        .push(Transition::test("r", "q1", 1, TestOp::AtMost, m - 1));
    for i in 0..n {
        let next = ss.get(i + 1).map_or("q2", String::as_str);
        sys.push(Transition::halve(&ss[i], next));
    }
    Ok(GadgetHandle {
        system: sys,
        entry: "p".into(),
        exits: vec!["q1".into(), "q2".into()],
        declared_bound: bound,
    })
}
