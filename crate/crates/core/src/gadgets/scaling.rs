use crate::model::{System, TestOp, Transition};

use super::{skeleton, Fresh, GadgetError};

/// Simulates a 1-dimensional system with doubling and halving by a plain
/// 2-dimensional one. The second counter is scratch space that is zero
/// between simulated steps; `p(x)` corresponds to `p(x, 0)`.
///
/// Doubling moves the value across two units at a time and back one at a
/// time; halving takes two units for every one it moves across. The zero
/// tests in between make both loops run to completion, so an odd value can
/// not be halved.
pub fn compile_to_2d(sys: &System) -> Result<System, GadgetError> {
    if sys.dimension != 1 {
        return Err(GadgetError::NotDimensionOne);
    }
    let mut out = skeleton(sys);
    out.dimension = 2;
    let mut fresh = Fresh::new(sys, "s");
    for t in &sys.transitions {
        let (from, to, there, back) = match t {
            Transition::Unary { from, delta, to } => {
                out.push(Transition::unary(from, &[delta[0], 0], to));
                continue;
            }
            Transition::Double { from, to } => (from, to, [-1, 2], [1, -1]),
            Transition::Halve { from, to } => (from, to, [-2, 1], [1, -1]),
            _ => {
                out.push(t.clone());
                continue;
            }
        };
        let r1 = fresh.state(&mut out);
        let r2 = fresh.state(&mut out);
        out.push(Transition::unary(from, &[0, 0], &r1))
            .push(Transition::unary(&r1, &there, &r1))
            .push(Transition::test(&r1, &r2, 1, TestOp::Equal, 0))
            .push(Transition::unary(&r2, &back, &r2))
            .push(Transition::test(&r2, to, 2, TestOp::Equal, 0));
    }
    Ok(out)
}
