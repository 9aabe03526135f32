//! Line-oriented map file reader.
//!
//! ```text
//! vertex P
//! edge W1 R P "Q(1/3) + Q(1/4)"
//! rot P : W1.h W4.t W2.t
//! outer : W1.t
//! face A : W1.h
//! ```
//!
//! `face` names the face on the left of a dart; unnamed bounded faces get
//! fresh names `R1, R2, ...` and an unnamed outer face is `R0`.

use coarse_core::{parse_tangle, MapBuilder, MapError, PlanarMap};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MapFileError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: {source}")]
    Map { line: usize, source: MapError },
    #[error("{0}")]
    Global(MapError),
}

fn syntax(line: usize, msg: impl Into<String>) -> MapFileError {
    MapFileError::Syntax { line, msg: msg.into() }
}

/// Splits `<head> : <rest>`; the colon may be glued to either side.
fn split_colon(line: usize, rest: &str) -> Result<(String, Vec<String>), MapFileError> {
    let (left, right) = rest.split_once(':').ok_or_else(|| syntax(line, "expected `:`"))?;
    Ok((left.trim().to_string(), right.split_whitespace().map(str::to_string).collect()))
}

pub fn parse_map(text: &str) -> Result<PlanarMap, MapFileError> {
    let mut b = MapBuilder::new();
    let mut mentions: Vec<(usize, Vec<String>)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (keyword, rest) = content.split_once(char::is_whitespace).unwrap_or((content, ""));
        let rest = rest.trim();
        let mut tokens: Vec<String> = Vec::new();
        match keyword {
            "vertex" => {
                let words: Vec<&str> = rest.split_whitespace().collect();
                if words.len() != 1 {
                    return Err(syntax(line, "expected `vertex <id>`"));
                }
                b.vertex(words[0]);
                tokens.push(words[0].to_string());
            }
            "edge" => {
                let (ids, quoted) = rest.split_once('"').ok_or_else(|| syntax(line, "expected a quoted tangle"))?;
                let expr = quoted.strip_suffix('"').ok_or_else(|| syntax(line, "unterminated tangle quote"))?;
                let ids: Vec<&str> = ids.split_whitespace().collect();
                if ids.len() != 3 {
                    return Err(syntax(line, "expected `edge <id> <tail> <head> \"<tangle>\"`"));
                }
                let t = parse_tangle(expr).map_err(|e| syntax(line, format!("tangle: {}", e)))?;
                b.tangle_edge(ids[0], ids[1], ids[2], t);
                tokens.extend(ids.iter().map(|s| s.to_string()));
            }
            "rot" => {
                let (v, darts) = split_colon(line, rest)?;
                if v.is_empty() || v.contains(char::is_whitespace) {
                    return Err(syntax(line, "expected `rot <vertex> : <dart> ...`"));
                }
                let refs: Vec<&str> = darts.iter().map(String::as_str).collect();
                b.rotation(&v, &refs);
                tokens.push(v);
                tokens.extend(darts);
            }
            "outer" => {
                let (head, darts) = split_colon(line, rest)?;
                if !head.is_empty() || darts.len() != 1 {
                    return Err(syntax(line, "expected `outer : <dart>`"));
                }
                b.outer(&darts[0]);
                tokens.extend(darts);
            }
            "face" => {
                let (name, darts) = split_colon(line, rest)?;
                if name.is_empty() || name.contains(char::is_whitespace) || darts.len() != 1 {
                    return Err(syntax(line, "expected `face <name> : <dart>`"));
                }
                b.face(&name, &darts[0]);
                tokens.push(name);
                tokens.extend(darts);
            }
            other => return Err(syntax(line, format!("unknown keyword `{}`", other))),
        }
        mentions.push((line, tokens));
    }
    b.build().map_err(|e| locate(e, &mentions))
}

/// Attaches the line of the last mention of the offending name, if any.
fn locate(e: MapError, mentions: &[(usize, Vec<String>)]) -> MapFileError {
    let name = match &e {
        MapError::DuplicateVertex(n)
        | MapError::DuplicateEdge(n)
        | MapError::UnknownVertex(n)
        | MapError::UnknownDart(n)
        | MapError::DartAtWrongVertex(n, _)
        | MapError::RepeatedDart(n)
        | MapError::RepeatedRotation(n)
        | MapError::DuplicateFaceName(n)
        | MapError::FaceNamedTwice(n) => Some(n.as_str()),
        _ => None,
    };
    let line = name.and_then(|n| mentions.iter().rev().find(|(_, t)| t.iter().any(|x| x == n)).map(|(l, _)| *l));
    match line {
        Some(line) => MapFileError::Map { line, source: e },
        None => MapFileError::Global(e),
    }
}
