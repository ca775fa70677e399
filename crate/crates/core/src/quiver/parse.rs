//! JSON quiver documents:
//!
//! ```json
//! { "vertices": ["1", "2"], "arrows": [{ "name": "a", "src": "1", "tgt": "2" }] }
//! ```
//!
//! Other top-level fields are ignored here, so a full job document can be
//! handed to [`parse_quiver`] directly.

use std::collections::HashSet;
use std::fmt;

use serde::Deserialize;
use serde_json::value::RawValue;

use super::Quiver;

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct SourcePosition {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for SourcePosition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

/// A parse or validation problem, located in the source text where possible.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Problem {
    pub position: Option<SourcePosition>,
    /// JSON pointer-like location, e.g. `arrows[3].tgt`.
    pub location: String,
    pub message: String,
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.position {
            Some(p) => write!(f, "{p}: {}: {}", self.location, self.message),
            None => write!(f, "{}: {}", self.location, self.message),
        }
    }
}

#[derive(Deserialize)]
struct QuiverDocument<'a> {
    #[serde(borrow)]
    vertices: Vec<&'a RawValue>,
    #[serde(borrow)]
    arrows: Vec<&'a RawValue>,
}

#[derive(Deserialize)]
struct ArrowEntry {
    name: String,
    src: String,
    tgt: String,
}

fn position_of(text: &str, offset: usize) -> SourcePosition {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rfind('\n').map_or(before.len(), |nl| before.len() - nl - 1) + 1;
    SourcePosition { line, column }
}

fn raw_position(text: &str, raw: &RawValue) -> SourcePosition {
    // The raw value borrows from `text`, so its address gives the byte offset.
    let offset = raw.get().as_ptr() as usize - text.as_ptr() as usize;
    position_of(text, offset)
}

/// Parses and validates a quiver document. On failure every problem found is
/// reported, not just the first.
pub fn parse_quiver(text: &str) -> Result<Quiver, Vec<Problem>> {
    let doc: QuiverDocument<'_> = serde_json::from_str(text).map_err(|e| {
        vec![Problem {
            position: Some(SourcePosition { line: e.line(), column: e.column() }),
            location: "$".into(),
            message: e.to_string(),
        }]
    })?;

    let mut problems = Vec::new();
    let mut quiver = Quiver::new();

    for (i, raw) in doc.vertices.iter().enumerate() {
        let pos = Some(raw_position(text, raw));
        let location = format!("vertices[{i}]");
        match serde_json::from_str::<String>(raw.get()) {
            Ok(name) => {
                if quiver.add_vertex(&name).is_err() {
                    problems.push(Problem { position: pos, location, message: format!("duplicate vertex `{name}`") });
                }
            }
            Err(e) => problems.push(Problem { position: pos, location, message: format!("vertex must be a string: {e}") }),
        }
    }

    let mut seen_arrows = HashSet::new();
    for (i, raw) in doc.arrows.iter().enumerate() {
        let pos = Some(raw_position(text, raw));
        let entry: ArrowEntry = match serde_json::from_str(raw.get()) {
            Ok(e) => e,
            Err(e) => {
                problems.push(Problem { position: pos, location: format!("arrows[{i}]"), message: e.to_string() });
                continue;
            }
        };
        if !seen_arrows.insert(entry.name.clone()) {
            problems.push(Problem {
                position: pos,
                location: format!("arrows[{i}].name"),
                message: format!("duplicate arrow `{}`", entry.name),
            });
            continue;
        }
        let mut ok = true;
        for (field, v) in [("src", &entry.src), ("tgt", &entry.tgt)] {
            if quiver.vertex_id(v).is_none() {
                ok = false;
                problems.push(Problem {
                    position: pos,
                    location: format!("arrows[{i}].{field}"),
                    message: format!("arrow `{}` refers to undeclared vertex `{v}`", entry.name),
                });
            }
        }
        if ok {
            quiver.add_arrow(&entry.name, &entry.src, &entry.tgt).expect("checked above");
        }
    }

    if problems.is_empty() {
        Ok(quiver)
    } else {
        Err(problems)
    }
}
