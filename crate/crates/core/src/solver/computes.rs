use std::collections::BTreeMap;

use crate::model::{Configuration, Natural, RunTree, System};

use super::{SolveError, Solver};

/// An explicit function on `{0..max}^d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctionTable {
    pub dimension: usize,
    pub max: Natural,
    pub entries: BTreeMap<Vec<Natural>, Vec<Natural>>,
}

impl FunctionTable {
    pub fn new(dimension: usize, max: Natural) -> Self {
        FunctionTable {
            dimension,
            max,
            entries: BTreeMap::new(),
        }
    }

    /// Tabulates `f` on the whole domain.
    pub fn from_fn(dimension: usize, max: Natural, f: impl Fn(&[Natural]) -> Vec<Natural>) -> Self {
        let mut table = FunctionTable::new(dimension, max);
        for n in table.domain() {
            let m = f(&n);
            table.entries.insert(n, m);
        }
        table
    }

    /// All points of `{0..max}^d` in lexicographic order.
    pub fn domain(&self) -> Vec<Vec<Natural>> {
        let mut out = vec![Vec::new()];
        for _ in 0..self.dimension {
            out = out
                .into_iter()
                .flat_map(|p| {
                    (0..=self.max).map(move |v| {
                        let mut q = p.clone();
                        q.push(v);
                        q
                    })
                })
                .collect();
        }
        out
    }

    fn check_total(&self) -> Result<(), SolveError> {
        for n in self.domain() {
            match self.entries.get(&n) {
                None => return Err(SolveError::BadTable(format!("no value for {n:?}"))),
                Some(m) if m.len() != self.dimension => {
                    return Err(SolveError::BadTable(format!("value for {n:?} has the wrong arity")))
                }
                _ => {}
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ComputeCounterexample {
    /// `p(input) →* q(expected)` does not hold.
    Missing {
        input: Vec<Natural>,
        expected: Vec<Natural>,
    },
    /// `p(input) →* q(output)` holds although `output ≠ f(input)`.
    Spurious {
        input: Vec<Natural>,
        output: Vec<Natural>,
        witness: RunTree,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComputeReport {
    pub points: usize,
    pub counterexample: Option<ComputeCounterexample>,
    /// Witnesses of `p(n) →* q(f(n))` for the points checked.
    pub witnesses: Vec<RunTree>,
}

impl ComputeReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Checks that `p(n) →* q(m)` holds exactly when `m = f(n)`, for every `n`
/// in the table's domain. Stops at the first counterexample.
pub fn check_computes(
    sys: &System,
    p: &str,
    q: &str,
    f: &FunctionTable,
) -> Result<ComputeReport, SolveError> {
    Solver::new(sys)?.check_computes(p, q, f)
}

impl Solver<'_> {
    pub fn check_computes(&self, p: &str, q: &str, f: &FunctionTable) -> Result<ComputeReport, SolveError> {
        if f.dimension != self.space.dim {
            return Err(SolveError::BadTable(format!(
                "table has dimension {}, system {}",
                f.dimension, self.space.dim
            )));
        }
        f.check_total()?;
        let q_id = self.space.state_id(q)?;
        self.space.state_id(p)?;
        let mut report = ComputeReport {
            points: 0,
            counterexample: None,
            witnesses: Vec::new(),
        };
        for (input, expected) in &f.entries {
            report.points += 1;
            let missing = || ComputeCounterexample::Missing {
                input: input.clone(),
                expected: expected.clone(),
            };
            let Ok(src) = self.space.encode(&Configuration::new(p, input.clone())) else {
                report.counterexample = Some(missing());
                break;
            };
            let reach = self.spine_forward(src, None);
            let mut outputs: Vec<u32> = reach
                .order
                .iter()
                .copied()
                .filter(|&i| self.space.state_of(i as usize) == q_id)
                .collect();
            outputs.sort_unstable();
            let want = self.space.encode(&Configuration::new(q, expected.clone())).ok();
            if let Some(&wrong) = outputs.iter().find(|&&i| Some(i as usize) != want) {
                report.counterexample = Some(ComputeCounterexample::Spurious {
                    input: input.clone(),
                    output: self.space.decode(wrong as usize).vector,
                    witness: reach.witness(self, wrong as usize).unwrap(),
                });
                break;
            }
            match want.filter(|&w| reach.contains(w)) {
                Some(w) => report.witnesses.push(reach.witness(self, w).unwrap()),
                None => {
                    report.counterexample = Some(missing());
                    break;
                }
            }
        }
        Ok(report)
    }
}
