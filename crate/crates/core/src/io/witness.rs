use serde::Deserialize;

use crate::model::{Configuration, Natural, RunMode, RunNode, RunTree, System};

use super::{numbers, parse_configuration, quoted, DocError, ParseError};

#[derive(Deserialize)]
#[serde(rename_all = "lowercase")]
enum ModeDoc {
    Full,
    Partial,
    Context(String),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct NodeDoc {
    state: String,
    vector: Vec<Natural>,
    transition: Option<usize>,
    children: Vec<usize>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct WitnessDoc {
    mode: ModeDoc,
    nodes: Vec<NodeDoc>,
}

/// Parses a run tree. Nodes are listed as a table and refer to their
/// children by position; node 0 is the root. The tree shape and transition
/// indices are checked against `sys`, the steps themselves are not.
pub fn parse_witness(text: &str, sys: &System) -> Result<RunTree, DocError> {
    let doc: WitnessDoc = serde_json::from_str(text).map_err(ParseError::from)?;
    let mode = match doc.mode {
        ModeDoc::Full => RunMode::FullRun,
        ModeDoc::Partial => RunMode::Partial,
        ModeDoc::Context(c) => RunMode::Context(parse_configuration(&c, sys.dimension)?),
    };
    let mut nodes = Vec::with_capacity(doc.nodes.len());
    for (i, n) in doc.nodes.into_iter().enumerate() {
        if let Some(t) = n.transition {
            if t >= sys.transitions.len() {
                return Err(ParseError::whole(format!(
                    "node {i}: transition {t} out of range (the system has {})",
                    sys.transitions.len()
                ))
                .into());
            }
        }
        nodes.push(RunNode {
            config: Configuration::new(n.state, n.vector),
            via: n.transition,
            children: n.children,
        });
    }
    RunTree::from_nodes(mode, nodes).map_err(|e| ParseError::whole(e.to_string()).into())
}

pub fn serialize_witness(tree: &RunTree) -> String {
    let mode = match &tree.mode {
        RunMode::FullRun => "\"full\"".to_string(),
        RunMode::Partial => "\"partial\"".to_string(),
        RunMode::Context(c) => format!("{{\"context\": {}}}", quoted(&c.to_string())),
    };
    let rows: Vec<String> = tree
        .nodes()
        .iter()
        .map(|n| {
            format!(
                "    {{\"state\": {}, \"vector\": {}, \"transition\": {}, \"children\": {}}}",
                quoted(&n.config.state),
                numbers(&n.config.vector),
                n.via.map_or("null".to_string(), |t| t.to_string()),
                numbers(&n.children)
            )
        })
        .collect();
    format!(
        "{{\n  \"mode\": {mode},\n  \"nodes\": [\n{}\n  ]\n}}\n",
        rows.join(",\n")
    )
}
