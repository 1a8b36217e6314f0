use serde::Deserialize;

use crate::model::Natural;
use crate::reductions::{CountdownGame, GameConfiguration, GameMove};

use super::{quoted, string_list, DocError, ParseError};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MoveDoc {
    from: String,
    weight: Natural,
    to: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct StartDoc {
    node: String,
    counter: Natural,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GameDoc {
    exists_nodes: Vec<String>,
    forall_nodes: Vec<String>,
    transitions: Vec<MoveDoc>,
    start: StartDoc,
}

/// Parses and checks a game document.
pub fn parse_game(text: &str) -> Result<(CountdownGame, GameConfiguration), DocError> {
    let doc: GameDoc = serde_json::from_str(text).map_err(ParseError::from)?;
    let game = CountdownGame {
        exists_nodes: doc.exists_nodes,
        forall_nodes: doc.forall_nodes,
        transitions: doc
            .transitions
            .into_iter()
            .map(|m| GameMove {
                from: m.from,
                weight: m.weight,
                to: m.to,
            })
            .collect(),
    };
    game.check()?;
    let start = GameConfiguration {
        node: doc.start.node,
        counter: doc.start.counter,
    };
    if game.owner(&start.node).is_none() {
        return Err(ParseError::whole(format!("unknown start node {}", start.node)).into());
    }
    Ok((game, start))
}

pub fn serialize_game(game: &CountdownGame, start: &GameConfiguration) -> String {
    let moves: Vec<String> = game
        .transitions
        .iter()
        .map(|m| {
            format!(
                "    {{\"from\": {}, \"weight\": {}, \"to\": {}}}",
                quoted(&m.from),
                m.weight,
                quoted(&m.to)
            )
        })
        .collect();
    let moves = if moves.is_empty() {
        "[]".to_string()
    } else {
        format!("[\n{}\n  ]", moves.join(",\n"))
    };
    format!(
        "{{\n  \"exists_nodes\": {},\n  \"forall_nodes\": {},\n  \"transitions\": {moves},\n  \"start\": {{\"node\": {}, \"counter\": {}}}\n}}\n",
        string_list(&game.exists_nodes),
        string_list(&game.forall_nodes),
        quoted(&start.node),
        start.counter
    )
}
