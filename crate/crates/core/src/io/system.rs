use serde::Deserialize;

use crate::model::{validate_system, Delta, Natural, System, TestOp, Transition};

use super::{numbers, quoted, string_list, DocError, ParseError};

#[derive(Deserialize)]
enum OpDoc {
    #[serde(rename = ">=")]
    AtLeast,
    #[serde(rename = "<=")]
    AtMost,
    #[serde(rename = "=")]
    Equal,
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum TransitionDoc {
    Unary {
        from: String,
        delta: Vec<Delta>,
        to: String,
    },
    Test {
        from: String,
        to: String,
        counter: usize,
        op: OpDoc,
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

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SystemDoc {
    dimension: usize,
    bound: Option<Natural>,
    states: Vec<String>,
    initial: Option<String>,
    transitions: Vec<TransitionDoc>,
}

impl From<TransitionDoc> for Transition {
    fn from(t: TransitionDoc) -> Self {
        match t {
            TransitionDoc::Unary { from, delta, to } => Transition::Unary { from, delta, to },
            TransitionDoc::Test {
                from,
                to,
                counter,
                op,
                value,
            } => Transition::Test {
                from,
                to,
                counter,
                op: match op {
                    OpDoc::AtLeast => TestOp::AtLeast,
                    OpDoc::AtMost => TestOp::AtMost,
                    OpDoc::Equal => TestOp::Equal,
                },
                value,
            },
            TransitionDoc::Double { from, to } => Transition::Double { from, to },
            TransitionDoc::Halve { from, to } => Transition::Halve { from, to },
            TransitionDoc::Branch { from, left, right } => Transition::Branch { from, left, right },
        }
    }
}

/// Parses a system document without validating it.
pub fn parse_system_unchecked(text: &str) -> Result<System, ParseError> {
    let doc: SystemDoc = serde_json::from_str(text)?;
    Ok(System {
        dimension: doc.dimension,
        bound: doc.bound,
        states: doc.states,
        initial: doc.initial,
        transitions: doc.transitions.into_iter().map(Transition::from).collect(),
    })
}

/// Parses and validates a system document.
pub fn parse_system(text: &str) -> Result<System, DocError> {
    let sys = parse_system_unchecked(text)?;
    let report = validate_system(&sys);
    if !report.is_ok() {
        return Err(DocError::Invalid(report));
    }
    Ok(sys)
}

fn transition_line(t: &Transition) -> String {
    let q = |s: &str| quoted(s);
    match t {
        Transition::Unary { from, delta, to } => format!(
            "{{\"kind\": \"unary\", \"from\": {}, \"delta\": {}, \"to\": {}}}",
            q(from),
            numbers(delta),
            q(to)
        ),
        Transition::Test {
            from,
            to,
            counter,
            op,
            value,
        } => format!(
            "{{\"kind\": \"test\", \"from\": {}, \"to\": {}, \"counter\": {counter}, \"op\": \"{}\", \"value\": {value}}}",
            q(from),
            q(to),
            op.symbol()
        ),
        Transition::Double { from, to } => format!("{{\"kind\": \"double\", \"from\": {}, \"to\": {}}}", q(from), q(to)),
        Transition::Halve { from, to } => format!("{{\"kind\": \"halve\", \"from\": {}, \"to\": {}}}", q(from), q(to)),
        Transition::Branch { from, left, right } => format!(
            "{{\"kind\": \"branch\", \"from\": {}, \"left\": {}, \"right\": {}}}",
            q(from),
            q(left),
            q(right)
        ),
    }
}

/// Canonical form: fixed key order, states in declaration order, one
/// transition per line.
pub fn serialize_system(sys: &System) -> String {
    let bound = sys.bound.map_or("null".to_string(), |b| b.to_string());
    let initial = sys.initial.as_deref().map_or("null".to_string(), quoted);
    let transitions = if sys.transitions.is_empty() {
        "[]".to_string()
    } else {
        let lines: Vec<String> = sys.transitions.iter().map(|t| format!("    {}", transition_line(t))).collect();
        format!("[\n{}\n  ]", lines.join(",\n"))
    };
    format!(
        "{{\n  \"dimension\": {},\n  \"bound\": {bound},\n  \"states\": {},\n  \"initial\": {initial},\n  \"transitions\": {transitions}\n}}\n",
        sys.dimension,
        string_list(&sys.states)
    )
}
