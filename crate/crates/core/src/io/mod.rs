//! JSON documents for systems, games, run trees and function tables, and
//! the `p(3,0)` configuration literal.

mod game;
mod system;
mod witness;

use serde::Deserialize;
use thiserror::Error;

use crate::model::{Configuration, Natural, ValidationReport};
use crate::reductions::ReductionError;
use crate::solver::FunctionTable;

pub use game::{parse_game, serialize_game};
pub use system::{parse_system, parse_system_unchecked, serialize_system};
pub use witness::{parse_witness, serialize_witness};

/// A syntax or shape error, positioned at a 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn at(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }

    /// An error about a value that was syntactically fine, reported at the
    /// start of the document.
    pub(crate) fn whole(message: impl Into<String>) -> Self {
        ParseError::at(1, 1, message)
    }
}

impl From<serde_json::Error> for ParseError {
    fn from(e: serde_json::Error) -> Self {
        let message = e.to_string();
        // serde_json appends " at line L column C"; the position is kept separately
        let message = match message.rfind(" at line ") {
            Some(i) => message[..i].to_string(),
            None => message,
        };
        ParseError::at(e.line().max(1), e.column().max(1), message)
    }
}

#[derive(Debug, Error)]
pub enum DocError {
    #[error("parse error: {0}")]
    Parse(#[from] ParseError),
    #[error("invalid system:\n{0}")]
    Invalid(ValidationReport),
    #[error("invalid game: {0}")]
    Game(#[from] ReductionError),
}

/// Parses `p(3)` or `q(6, 0)`, checking the arity against `dimension`.
pub fn parse_configuration(text: &str, dimension: usize) -> Result<Configuration, ParseError> {
    let text = text.trim();
    let open = text
        .rfind('(')
        .ok_or_else(|| ParseError::at(1, 1, format!("expected `state(values)`, found `{text}`")))?;
    if !text.ends_with(')') {
        return Err(ParseError::at(1, text.len(), "missing closing parenthesis"));
    }
    let state = text[..open].trim();
    if state.is_empty() {
        return Err(ParseError::at(1, 1, "missing state name"));
    }
    let inner = &text[open + 1..text.len() - 1];
    let mut vector = Vec::new();
    let mut column = open + 2;
    for part in inner.split(',') {
        let value = part.trim();
        let n: Natural = value
            .parse()
            .map_err(|_| ParseError::at(1, column, format!("`{value}` is not a natural number")))?;
        vector.push(n);
        column += part.len() + 1;
    }
    if vector.len() != dimension {
        return Err(ParseError::at(
            1,
            open + 1,
            format!("expected {dimension} values, found {}", vector.len()),
        ));
    }
    Ok(Configuration::new(state, vector))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TableEntry {
    input: Vec<Natural>,
    output: Vec<Natural>,
}

/// Parses `[{"input": [..], "output": [..]}, ..]` into a table over
/// `{0..max}^dimension`. Inputs outside the domain are rejected; missing
/// inputs are reported when the table is used.
pub fn parse_table(text: &str, dimension: usize, max: Natural) -> Result<FunctionTable, ParseError> {
    let entries: Vec<TableEntry> = serde_json::from_str(text)?;
    let mut table = FunctionTable::new(dimension, max);
    for (i, e) in entries.into_iter().enumerate() {
        if e.input.len() != dimension || e.output.len() != dimension {
            return Err(ParseError::whole(format!("entry {i}: expected {dimension} values")));
        }
        if e.input.iter().any(|&v| v > max) {
            return Err(ParseError::whole(format!("entry {i}: input {:?} exceeds {max}", e.input)));
        }
        if table.entries.insert(e.input.clone(), e.output).is_some() {
            return Err(ParseError::whole(format!("entry {i}: input {:?} listed twice", e.input)));
        }
    }
    Ok(table)
}

pub fn serialize_table(table: &FunctionTable) -> String {
    let rows: Vec<String> = table
        .entries
        .iter()
        .map(|(i, o)| format!("  {{\"input\": {}, \"output\": {}}}", numbers(i), numbers(o)))
        .collect();
    if rows.is_empty() {
        return "[]\n".into();
    }
    format!("[\n{}\n]\n", rows.join(",\n"))
}

pub(crate) fn quoted(s: &str) -> String {
    serde_json::to_string(s).expect("strings always serialize")
}

pub(crate) fn numbers<T: ToString>(v: &[T]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(", "))
}

pub(crate) fn string_list(v: &[String]) -> String {
    let parts: Vec<String> = v.iter().map(|s| quoted(s)).collect();
    format!("[{}]", parts.join(", "))
}
