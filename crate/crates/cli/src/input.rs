//! Reading diagrams and grids from files or stdin.

use std::fmt;
use std::io::Read;

use graphhom::diagram::DiagramJson;
use graphhom::grid::GridDiagram;
use graphhom::{Diagram, Error, LinkDiagram};
use serde_json::Value;

/// Process exit codes.
pub const EXIT_CHECK: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn input(message: impl Into<String>) -> Self {
        CliError { code: EXIT_INPUT, message: message.into() }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidDiagram(_) | Error::NotALink(_) | Error::InvalidGrid(_) | Error::ChoiceMismatch(_) | Error::Json(_) => EXIT_INPUT,
            _ => EXIT_CHECK,
        };
        CliError { code, message: e.to_string() }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// Reads `path`, with `-` meaning stdin.
pub fn read_source(path: &str) -> CliResult<String> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| CliError::input(format!("stdin: {e}")))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| CliError::input(format!("{path}: {e}")))
    }
}

pub fn parse_json(path: &str, text: &str) -> CliResult<Value> {
    serde_json::from_str(text)
        .map_err(|e| CliError::input(format!("{path}: malformed JSON at line {} column {}: {e}", e.line(), e.column())))
}

/// Output of `moves` wraps the diagram; accept it wherever a diagram is read.
fn unwrap_diagram(v: Value) -> Value {
    match v {
        Value::Object(mut m) if m.contains_key("diagram") => m.remove("diagram").unwrap(),
        v => v,
    }
}

pub fn diagram_json(path: &str) -> CliResult<DiagramJson> {
    let v = unwrap_diagram(parse_json(path, &read_source(path)?)?);
    serde_json::from_value(v).map_err(|e| CliError::input(format!("{path}: not a diagram: {e}")))
}

pub fn load_diagram(path: &str) -> CliResult<Diagram> {
    diagram_json(path)?.into_diagram().map_err(|e| CliError::input(format!("{path}: {e}")))
}

pub fn load_link(path: &str) -> CliResult<LinkDiagram> {
    LinkDiagram::new(load_diagram(path)?).map_err(|e| CliError::input(format!("{path}: {e}")))
}

pub enum LinkOrGrid {
    Link(LinkDiagram),
    Grid(GridDiagram),
}

pub fn load_link_or_grid(path: &str) -> CliResult<LinkOrGrid> {
    let v = unwrap_diagram(parse_json(path, &read_source(path)?)?);
    let is_grid = v.as_object().is_some_and(|m| m.contains_key("X") && m.contains_key("O"));
    if is_grid {
        let g: GridDiagram = serde_json::from_value(v).map_err(|e| CliError::input(format!("{path}: not a grid: {e}")))?;
        g.check().map_err(|e| CliError::input(format!("{path}: {e}")))?;
        return Ok(LinkOrGrid::Grid(g));
    }
    let raw: DiagramJson = serde_json::from_value(v).map_err(|e| CliError::input(format!("{path}: not a diagram: {e}")))?;
    let d = raw.into_diagram().map_err(|e| CliError::input(format!("{path}: {e}")))?;
    Ok(LinkOrGrid::Link(LinkDiagram::new(d).map_err(|e| CliError::input(format!("{path}: {e}")))?))
}
