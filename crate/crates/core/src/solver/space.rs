use std::collections::HashMap;

use crate::model::{Configuration, Natural, System, TestOp, Transition};

use super::SolveError;

/// Dense numbering of all configurations `q(n)` with `n ∈ {0..B}^d`.
///
/// Index = `state * per_state + Σ n_i * base^(i-1)`; counter 1 is the least
/// significant digit.
#[derive(Debug, Clone)]
pub(crate) struct Space {
    pub dim: usize,
    pub bound: Natural,
    base: usize,
    pub per_state: usize,
    strides: Vec<usize>,
    pub states: Vec<String>,
    index: HashMap<String, usize>,
}

/// A transition with states resolved to indices.
#[derive(Debug, Clone)]
pub(crate) enum Step {
    Unary {
        from: usize,
        to: usize,
        delta: Vec<i64>,
    },
    Test {
        from: usize,
        to: usize,
        counter: usize,
        op: TestOp,
        value: Natural,
    },
    Double {
        from: usize,
        to: usize,
    },
    Halve {
        from: usize,
        to: usize,
    },
    Branch {
        from: usize,
        left: usize,
        right: usize,
    },
}

impl Step {
    pub fn from(&self) -> usize {
        match *self {
            Step::Unary { from, .. }
            | Step::Test { from, .. }
            | Step::Double { from, .. }
            | Step::Halve { from, .. }
            | Step::Branch { from, .. } => from,
        }
    }

    pub fn to(&self) -> Option<usize> {
        match *self {
            Step::Unary { to, .. }
            | Step::Test { to, .. }
            | Step::Double { to, .. }
            | Step::Halve { to, .. } => Some(to),
            Step::Branch { .. } => None,
        }
    }
}

impl Space {
    pub fn new(sys: &System, limit: Option<usize>) -> Result<Space, SolveError> {
        let bound = sys.bound.ok_or(SolveError::Unbounded)?;
        let too_large = || SolveError::TooLarge {
            states: sys.states.len(),
            bound,
            dimension: sys.dimension,
        };
        let base = usize::try_from(bound)
            .ok()
            .and_then(|b| b.checked_add(1))
            .ok_or_else(too_large)?;
        let mut strides = Vec::with_capacity(sys.dimension);
        let mut per_state: usize = 1;
        for _ in 0..sys.dimension {
            strides.push(per_state);
            per_state = per_state.checked_mul(base).ok_or_else(too_large)?;
        }
        let size = per_state
            .checked_mul(sys.states.len().max(1))
            .ok_or_else(too_large)?;
        if size > limit.unwrap_or(usize::MAX) || size > u32::MAX as usize {
            return Err(too_large());
        }
        Ok(Space {
            dim: sys.dimension,
            bound,
            base,
            per_state,
            strides,
            states: sys.states.clone(),
            index: sys
                .states
                .iter()
                .enumerate()
                .map(|(i, s)| (s.clone(), i))
                .collect(),
        })
    }

    pub fn size(&self) -> usize {
        self.per_state * self.states.len()
    }

    pub fn state_id(&self, name: &str) -> Result<usize, SolveError> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| SolveError::UnknownState(name.to_owned()))
    }

    pub fn compile(&self, t: &Transition) -> Result<Step, SolveError> {
        let id = |s: &str| self.state_id(s);
        Ok(match t {
            Transition::Unary { from, delta, to } => Step::Unary {
                from: id(from)?,
                to: id(to)?,
                delta: delta.clone(),
            },
            Transition::Test {
                from,
                to,
                counter,
                op,
                value,
            } => Step::Test {
                from: id(from)?,
                to: id(to)?,
                counter: counter - 1,
                op: *op,
                value: *value,
            },
            Transition::Double { from, to } => Step::Double {
                from: id(from)?,
                to: id(to)?,
            },
            Transition::Halve { from, to } => Step::Halve {
                from: id(from)?,
                to: id(to)?,
            },
            Transition::Branch { from, left, right } => Step::Branch {
                from: id(from)?,
                left: id(left)?,
                right: id(right)?,
            },
        })
    }

    pub fn state_of(&self, idx: usize) -> usize {
        idx / self.per_state
    }

    pub fn vec_of(&self, idx: usize) -> usize {
        idx % self.per_state
    }

    pub fn join(&self, state: usize, vec: usize) -> usize {
        state * self.per_state + vec
    }

    pub fn component(&self, vec: usize, i: usize) -> Natural {
        ((vec / self.strides[i]) % self.base) as Natural
    }

    pub fn encode(&self, c: &Configuration) -> Result<usize, SolveError> {
        let state = self.state_id(&c.state)?;
        if c.vector.len() != self.dim {
            return Err(SolveError::DimensionMismatch(c.clone()));
        }
        if c.vector.iter().any(|&v| v > self.bound) {
            return Err(SolveError::OutOfBounds(c.clone()));
        }
        let vec: usize = c
            .vector
            .iter()
            .zip(&self.strides)
            .map(|(&v, &s)| v as usize * s)
            .sum();
        Ok(self.join(state, vec))
    }

    pub fn decode(&self, idx: usize) -> Configuration {
        let vec = self.vec_of(idx);
        Configuration {
            state: self.states[self.state_of(idx)].clone(),
            vector: (0..self.dim).map(|i| self.component(vec, i)).collect(),
        }
    }

    fn shift(&self, vec: usize, delta: &[i64], sign: i64) -> Option<usize> {
        let mut out = vec as i128;
        for (i, &z) in delta.iter().enumerate() {
            let z = z as i128 * sign as i128;
            let v = self.component(vec, i) as i128 + z;
            if v < 0 || v > self.bound as i128 {
                return None;
            }
            out += z * self.strides[i] as i128;
        }
        Some(out as usize)
    }

    /// Successor of `idx` under a non-branching step whose source state matches.
    pub fn fire(&self, idx: usize, step: &Step) -> Option<usize> {
        let vec = self.vec_of(idx);
        let (to, next) = match step {
            Step::Unary { to, delta, .. } => (*to, self.shift(vec, delta, 1)?),
            Step::Test {
                to,
                counter,
                op,
                value,
                ..
            } => {
                if !op.holds(self.component(vec, *counter), *value) {
                    return None;
                }
                (*to, vec)
            }
            Step::Double { to, .. } => {
                let v = vec.checked_mul(2)?;
                if v as Natural > self.bound {
                    return None;
                }
                (*to, v)
            }
            Step::Halve { to, .. } => {
                if vec % 2 == 1 {
                    return None;
                }
                (*to, vec / 2)
            }
            Step::Branch { .. } => return None,
        };
        Some(self.join(to, next))
    }

    /// The unique predecessor of `idx` under a non-branching step whose target
    /// state matches.
    pub fn unfire(&self, idx: usize, step: &Step) -> Option<usize> {
        let vec = self.vec_of(idx);
        let (from, prev) = match step {
            Step::Unary { from, delta, .. } => (*from, self.shift(vec, delta, -1)?),
            Step::Test {
                from,
                counter,
                op,
                value,
                ..
            } => {
                if !op.holds(self.component(vec, *counter), *value) {
                    return None;
                }
                (*from, vec)
            }
            Step::Double { from, .. } => {
                if vec % 2 == 1 {
                    return None;
                }
                (*from, vec / 2)
            }
            Step::Halve { from, .. } => {
                let v = vec.checked_mul(2)?;
                if v as Natural > self.bound {
                    return None;
                }
                (*from, v)
            }
            Step::Branch { .. } => return None,
        };
        Some(self.join(from, prev))
    }

    /// Componentwise sum of two vector indices, if within the bound.
    pub fn add(&self, a: usize, b: usize) -> Option<usize> {
        let mut out = 0;
        for i in 0..self.dim {
            let v = self.component(a, i) + self.component(b, i);
            if v > self.bound {
                return None;
            }
            out += v as usize * self.strides[i];
        }
        Some(out)
    }

    /// `a - b` if `b <= a` componentwise.
    pub fn sub(&self, a: usize, b: usize) -> Option<usize> {
        let mut out = 0;
        for i in 0..self.dim {
            let (x, y) = (self.component(a, i), self.component(b, i));
            if y > x {
                return None;
            }
            out += (x - y) as usize * self.strides[i];
        }
        Some(out)
    }

    /// All vectors `m1` with `m1 <= vec` componentwise, in ascending index order.
    pub fn below(&self, vec: usize) -> Vec<usize> {
        let mut out = vec![0usize];
        for i in 0..self.dim {
            let top = self.component(vec, i) as usize;
            let stride = self.strides[i];
            let prev = std::mem::take(&mut out);
            for k in 0..=top {
                out.extend(prev.iter().map(|&p| p + k * stride));
            }
        }
        out.sort_unstable();
        out
    }
}
