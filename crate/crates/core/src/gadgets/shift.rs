//! With bound `2^n - 1` a counter holds exactly the `n`-bit words, so
//! doubling and halving can each be built from cyclic shifts implemented
//! with the other operation.

use crate::model::{Delta, Natural, System, TestOp, Transition};

use super::{skeleton, Fresh, GadgetError};

fn word_size(sys: &System) -> Result<u32, GadgetError> {
    if sys.dimension != 1 {
        return Err(GadgetError::NotDimensionOne);
    }
    let b = sys.bound.ok_or(GadgetError::Unbounded)?;
    match b.checked_add(1).and_then(super::log2_exact) {
        Some(n) if n >= 1 => Ok(n),
        _ => Err(GadgetError::BoundNotPowerOfTwoMinusOne(b)),
    }
}

fn high_bit(n: u32) -> Natural {
    1 << (n - 1)
}

/// Cyclic left shift of an `n`-bit word using doubling.
fn push_left_block(out: &mut System, fresh: &mut Fresh, from: &str, to: &str, n: u32) {
    let h = high_bit(n);
    let (q1, q2, r) = (fresh.state(out), fresh.state(out), fresh.state(out));
    out.push(Transition::unary(from, &[-(h as Delta)], &q1))
        .push(Transition::test(from, &r, 1, TestOp::AtMost, h - 1))
        .push(Transition::double(&q1, &q2))
        .push(Transition::unary(&q2, &[1], to))
        .push(Transition::double(&r, to));
}

/// Cyclic right shift of an `n`-bit word using halving.
fn push_right_block(out: &mut System, fresh: &mut Fresh, from: &str, to: &str, n: u32) {
    let h = high_bit(n);
    let (q1, q2, r) = (fresh.state(out), fresh.state(out), fresh.state(out));
    out.push(Transition::unary(from, &[-1], &q1))
        .push(Transition::unary(from, &[0], &r))
        .push(Transition::halve(&q1, &q2))
        .push(Transition::unary(&q2, &[h as Delta], to))
        .push(Transition::halve(&r, to));
}

/// Chains `count` blocks from `from` to `to` through fresh states.
fn push_blocks(
    out: &mut System,
    fresh: &mut Fresh,
    from: &str,
    to: &str,
    n: u32,
    count: u32,
    block: Block,
) {
    let mut at = from.to_string();
    for k in 0..count {
        let next = if k + 1 == count {
            to.to_string()
        } else {
            fresh.state(out)
        };
        block(out, fresh, &at, &next, n);
        at = next;
    }
}

/// Replaces halving by `n - 1` cyclic left shifts (a cyclic right shift by
/// one) followed by a check that the wrapped-around low bit was zero.
pub fn compile_doubling_only(sys: &System) -> Result<System, GadgetError> {
    let n = word_size(sys)?;
    let mut out = skeleton(sys);
    let mut fresh = Fresh::new(sys, "d");
    for t in &sys.transitions {
        let Transition::Halve { from, to } = t else {
            out.push(t.clone());
            continue;
        };
        let last = if n == 1 {
            from.clone()
        } else {
            let a = fresh.state(&mut out);
            push_blocks(&mut out, &mut fresh, from, &a, n, n - 1, push_left_block);
            a
        };
        out.push(Transition::test(&last, to, 1, TestOp::AtMost, high_bit(n) - 1));
    }
    Ok(out)
}

/// Replaces doubling by a check that the high bit is zero followed by
/// `n - 1` cyclic right shifts (a cyclic left shift by one).
pub fn compile_halving_only(sys: &System) -> Result<System, GadgetError> {
    let n = word_size(sys)?;
    let mut out = skeleton(sys);
    let mut fresh = Fresh::new(sys, "h");
    for t in &sys.transitions {
        let Transition::Double { from, to } = t else {
            out.push(t.clone());
            continue;
        };
        let first = if n == 1 {
            to.clone()
        } else {
            fresh.state(&mut out)
        };
        out.push(Transition::test(from, &first, 1, TestOp::AtMost, high_bit(n) - 1));
        if n > 1 {
            push_blocks(&mut out, &mut fresh, &first, to, n, n - 1, push_right_block);
        }
    }
    Ok(out)
}

type Block = fn(&mut System, &mut Fresh, &str, &str, u32);

fn block_system(n: u32, block: Block) -> Result<super::GadgetHandle, GadgetError> {
    if n == 0 || n >= 63 {
        return Err(GadgetError::TooLarge(n as Natural));
    }
    let bound = (1 << n) - 1;
    let mut sys = System::new(1, Some(bound));
    sys.add_states(["p", "p'"]);
    let mut fresh = Fresh::new(&sys, "s");
    block(&mut sys, &mut fresh, "p", "p'", n);
    Ok(super::GadgetHandle {
        system: sys,
        entry: "p".into(),
        exits: vec!["p'".into()],
        declared_bound: bound,
    })
}

/// A single cyclic left shift block on `n`-bit words, from `p` to `p'`.
pub fn shift_left_block(n: u32) -> Result<super::GadgetHandle, GadgetError> {
    block_system(n, push_left_block)
}

/// A single cyclic right shift block on `n`-bit words, from `p` to `p'`.
pub fn shift_right_block(n: u32) -> Result<super::GadgetHandle, GadgetError> {
    block_system(n, push_right_block)
}
