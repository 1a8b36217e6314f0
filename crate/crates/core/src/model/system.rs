use std::collections::HashMap;
use std::fmt;

/// Counter values in configurations.
pub type Natural = u64;
/// Components of update vectors.
pub type Delta = i64;

/// Comparison performed by a [`Transition::Test`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TestOp {
    AtLeast,
    AtMost,
    Equal,
}

impl TestOp {
    pub fn holds(self, value: Natural, against: Natural) -> bool {
        match self {
            TestOp::AtLeast => value >= against,
            TestOp::AtMost => value <= against,
            TestOp::Equal => value == against,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            TestOp::AtLeast => ">=",
            TestOp::AtMost => "<=",
            TestOp::Equal => "=",
        }
    }

    pub fn from_symbol(s: &str) -> Option<TestOp> {
        match s {
            ">=" => Some(TestOp::AtLeast),
            "<=" => Some(TestOp::AtMost),
            "=" => Some(TestOp::Equal),
            _ => None,
        }
    }
}

impl fmt::Display for TestOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// A single transition. Counters in tests are 1-indexed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Transition {
    Unary {
        from: String,
        delta: Vec<Delta>,
        to: String,
    },
    Test {
        from: String,
        to: String,
        counter: usize,
        op: TestOp,
        value: Natural,
    },
    Double {
        from: String,
        to: String,
    },
    Halve {
        from: String,
        to: String,
    },
    Branch {
        from: String,
        left: String,
        right: String,
    },
}

impl Transition {
    pub fn unary(from: &str, delta: &[Delta], to: &str) -> Self {
        Transition::Unary {
            from: from.to_owned(),
            delta: delta.to_vec(),
            to: to.to_owned(),
        }
    }

    pub fn test(from: &str, to: &str, counter: usize, op: TestOp, value: Natural) -> Self {
        Transition::Test {
            from: from.to_owned(),
            to: to.to_owned(),
            counter,
            op,
            value,
        }
    }

    pub fn double(from: &str, to: &str) -> Self {
        Transition::Double {
            from: from.to_owned(),
            to: to.to_owned(),
        }
    }

    pub fn halve(from: &str, to: &str) -> Self {
        Transition::Halve {
            from: from.to_owned(),
            to: to.to_owned(),
        }
    }

    pub fn branch(from: &str, left: &str, right: &str) -> Self {
        Transition::Branch {
            from: from.to_owned(),
            left: left.to_owned(),
            right: right.to_owned(),
        }
    }

    pub fn from_state(&self) -> &str {
        match self {
            Transition::Unary { from, .. }
            | Transition::Test { from, .. }
            | Transition::Double { from, .. }
            | Transition::Halve { from, .. }
            | Transition::Branch { from, .. } => from,
        }
    }

    /// Target state of a non-branching transition.
    pub fn to_state(&self) -> Option<&str> {
        match self {
            Transition::Unary { to, .. }
            | Transition::Test { to, .. }
            | Transition::Double { to, .. }
            | Transition::Halve { to, .. } => Some(to),
            Transition::Branch { .. } => None,
        }
    }

    pub fn is_branch(&self) -> bool {
        matches!(self, Transition::Branch { .. })
    }

    /// All states mentioned by the transition, source first.
    pub fn states(&self) -> Vec<&str> {
        match self {
            Transition::Branch { from, left, right } => vec![from, left, right],
            other => vec![other.from_state(), other.to_state().unwrap()],
        }
    }

    pub(crate) fn map_states(&self, f: impl Fn(&str) -> String) -> Transition {
        match self {
            Transition::Unary { from, delta, to } => Transition::Unary {
                from: f(from),
                delta: delta.clone(),
                to: f(to),
            },
            Transition::Test {
                from,
                to,
                counter,
                op,
                value,
            } => Transition::Test {
                from: f(from),
                to: f(to),
                counter: *counter,
                op: *op,
                value: *value,
            },
            Transition::Double { from, to } => Transition::Double {
                from: f(from),
                to: f(to),
            },
            Transition::Halve { from, to } => Transition::Halve {
                from: f(from),
                to: f(to),
            },
            Transition::Branch { from, left, right } => Transition::Branch {
                from: f(from),
                left: f(left),
                right: f(right),
            },
        }
    }
}

impl fmt::Display for Transition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Transition::Unary { from, delta, to } => {
                let parts: Vec<String> = delta.iter().map(|z| format!("{z:+}")).collect();
                write!(f, "{from} --({})--> {to}", parts.join(","))
            }
            Transition::Test {
                from,
                to,
                counter,
                op,
                value,
            } => write!(f, "{from} --[c{counter} {op} {value}]--> {to}"),
            Transition::Double { from, to } => write!(f, "{from} --x2--> {to}"),
            Transition::Halve { from, to } => write!(f, "{from} --/2--> {to}"),
            Transition::Branch { from, left, right } => write!(f, "{from} --> ({left}, {right})"),
        }
    }
}

/// A state paired with a counter vector, written `q(n1,...,nd)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Configuration {
    pub state: String,
    pub vector: Vec<Natural>,
}

impl Configuration {
    pub fn new(state: impl Into<String>, vector: impl Into<Vec<Natural>>) -> Self {
        Configuration {
            state: state.into(),
            vector: vector.into(),
        }
    }

    pub fn zero(state: impl Into<String>, dimension: usize) -> Self {
        Configuration::new(state, vec![0; dimension])
    }

    pub fn is_zero(&self) -> bool {
        self.vector.iter().all(|&v| v == 0)
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.vector.iter().map(|v| v.to_string()).collect();
        write!(f, "{}({})", self.state, parts.join(","))
    }
}

/// A d-dimensional VASS, optionally bounded and optionally branching.
///
/// One carrier covers every model variant: `bound` distinguishes bounded
/// from unbounded systems, `Branch` transitions make the system branching
/// and `Double`/`Halve` transitions are only legal in dimension one.
/// Construction does not validate; see [`crate::validate_system`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct System {
    pub dimension: usize,
    pub bound: Option<Natural>,
    pub states: Vec<String>,
    pub initial: Option<String>,
    pub transitions: Vec<Transition>,
}

impl System {
    pub fn new(dimension: usize, bound: Option<Natural>) -> Self {
        System {
            dimension,
            bound,
            states: Vec::new(),
            initial: None,
            transitions: Vec::new(),
        }
    }

    /// Adds a state unless it is already present.
    pub fn add_state(&mut self, name: &str) -> &mut Self {
        if !self.has_state(name) {
            self.states.push(name.to_owned());
        }
        self
    }

    pub fn add_states<'a>(&mut self, names: impl IntoIterator<Item = &'a str>) -> &mut Self {
        for n in names {
            self.add_state(n);
        }
        self
    }

    pub fn push(&mut self, t: Transition) -> &mut Self {
        self.transitions.push(t);
        self
    }

    pub fn with_initial(mut self, q0: &str) -> Self {
        self.add_state(q0);
        self.initial = Some(q0.to_owned());
        self
    }

    pub fn with_bound(&self, bound: Option<Natural>) -> System {
        System {
            bound,
            ..self.clone()
        }
    }

    pub fn has_state(&self, name: &str) -> bool {
        self.states.iter().any(|s| s == name)
    }

    pub fn state_index(&self) -> HashMap<&str, usize> {
        self.states
            .iter()
            .enumerate()
            .map(|(i, s)| (s.as_str(), i))
            .collect()
    }

    pub fn has_branching(&self) -> bool {
        self.transitions.iter().any(Transition::is_branch)
    }

    pub fn has_scaling(&self) -> bool {
        self.transitions
            .iter()
            .any(|t| matches!(t, Transition::Double { .. } | Transition::Halve { .. }))
    }

    pub fn has_tests(&self) -> bool {
        self.transitions
            .iter()
            .any(|t| matches!(t, Transition::Test { .. }))
    }

    pub fn zero(&self, state: &str) -> Configuration {
        Configuration::zero(state, self.dimension)
    }

    /// `q0(0)` when an initial state is declared.
    pub fn initial_configuration(&self) -> Option<Configuration> {
        self.initial.as_deref().map(|q0| self.zero(q0))
    }

    /// Whether the vector lies in `{0..B}^d` (always true when unbounded).
    pub fn within_bound(&self, vector: &[Natural]) -> bool {
        match self.bound {
            Some(b) => vector.iter().all(|&v| v <= b),
            None => true,
        }
    }
}
