//! Input parsing: texts, string collections, edge lists, and ordering
//! specifications.
//!
//! Special symbols are never typed by users except `$` standing for the
//! sentinel (in `--order` specs and in BWT strings passed to `invert`).

use std::fmt;
use std::fs;
use std::path::Path;

use runmin::alphabet::{AlphabetOrdering, Symbol, Text};
use runmin::cao::StringCollection;
use runmin::reductions::TspInstance;
use runmin::wheeler::WheelerGraph;

/// Usage-level failure: malformed input or arguments (exit code 2).
#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

pub fn read_file(path: &Path) -> Result<Vec<u8>, UsageError> {
    fs::read(path).map_err(|e| UsageError(format!("cannot read {}: {e}", path.display())))
}

/// Raw text bytes from `--text` or `--input`; a single trailing newline in
/// file input is dropped.
pub fn text_bytes(
    text: &Option<String>,
    input: &Option<std::path::PathBuf>,
) -> Result<Vec<u8>, UsageError> {
    match (text, input) {
        (Some(t), None) => Ok(t.as_bytes().to_vec()),
        (None, Some(path)) => {
            let mut bytes = read_file(path)?;
            if bytes.last() == Some(&b'\n') {
                bytes.pop();
            }
            Ok(bytes)
        }
        _ => Err(UsageError(
            "provide exactly one of --text or --input".into(),
        )),
    }
}

/// Bytes as a BWT sequence in which `$` marks the sentinel.
pub fn bwt_sequence(bytes: &[u8]) -> Vec<Symbol> {
    bytes
        .iter()
        .map(|&b| {
            if b == b'$' {
                Symbol::Sentinel
            } else {
                Symbol::Regular(b as u32)
            }
        })
        .collect()
}

/// One string per line; terminators are implicit in line order.
pub fn collection(bytes: &[u8]) -> Result<StringCollection, UsageError> {
    let content = std::str::from_utf8(bytes)
        .map_err(|_| UsageError("collection input must be UTF-8 text".into()))?;
    let lines: Vec<&str> = content.lines().collect();
    if lines.is_empty() {
        return Err(UsageError("collection input is empty".into()));
    }
    StringCollection::from_lines(&lines).map_err(|e| UsageError(e.to_string()))
}

/// Unit-edge list: one `u v` pair per line, 0-based.
pub fn edge_list(bytes: &[u8]) -> Result<TspInstance, UsageError> {
    let content = std::str::from_utf8(bytes)
        .map_err(|_| UsageError("edge list must be UTF-8 text".into()))?;
    let mut edges = Vec::new();
    let mut max_vertex = 0u32;
    for (lineno, line) in content.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let mut parts = line.split_whitespace();
        let parse = |tok: Option<&str>| -> Result<u32, UsageError> {
            tok.and_then(|t| t.parse().ok())
                .ok_or_else(|| UsageError(format!("line {}: expected 'u v'", lineno + 1)))
        };
        let u = parse(parts.next())?;
        let v = parse(parts.next())?;
        if parts.next().is_some() {
            return Err(UsageError(format!("line {}: expected 'u v'", lineno + 1)));
        }
        max_vertex = max_vertex.max(u).max(v);
        edges.push((u, v));
    }
    if edges.is_empty() {
        return Err(UsageError("edge list is empty".into()));
    }
    TspInstance::new(max_vertex as usize + 1, &edges).map_err(|e| UsageError(e.to_string()))
}

/// Labeled edge list: one `u v label` triple per line; labels are integers
/// or single characters.
pub fn wg_edge_list(bytes: &[u8]) -> Result<WheelerGraph, UsageError> {
    let content = std::str::from_utf8(bytes)
        .map_err(|_| UsageError("edge list must be UTF-8 text".into()))?;
    let mut edges = Vec::new();
    let mut max_vertex = 0u32;
    for (lineno, line) in content.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let parts: Vec<&str> = line.split_whitespace().collect();
        if parts.len() != 3 {
            return Err(UsageError(format!(
                "line {}: expected 'u v label'",
                lineno + 1
            )));
        }
        let vertex = |tok: &str| -> Result<u32, UsageError> {
            tok.parse()
                .map_err(|_| UsageError(format!("line {}: bad vertex '{tok}'", lineno + 1)))
        };
        let u = vertex(parts[0])?;
        let v = vertex(parts[1])?;
        let label = match parts[2].parse::<u32>() {
            Ok(k) => k,
            Err(_) if parts[2].len() == 1 => parts[2].bytes().next().unwrap() as u32,
            Err(_) => {
                return Err(UsageError(format!(
                    "line {}: bad label '{}'",
                    lineno + 1,
                    parts[2]
                )))
            }
        };
        max_vertex = max_vertex.max(u).max(v);
        edges.push((u, v, label));
    }
    if edges.is_empty() {
        return Err(UsageError("edge list is empty".into()));
    }
    WheelerGraph::new(max_vertex as usize + 1, edges).map_err(|e| UsageError(e.to_string()))
}

/// Parse a comma-separated ordering spec (or `@file`) against a text's
/// alphabet. `$` names the sentinel and is prepended when omitted; every
/// other token is a single character.
pub fn ordering_spec(spec: &str, text: &Text) -> Result<AlphabetOrdering, UsageError> {
    let owned;
    let spec = if let Some(path) = spec.strip_prefix('@') {
        owned = String::from_utf8(read_file(Path::new(path))?)
            .map_err(|_| UsageError("ordering file must be UTF-8".into()))?;
        owned.trim().to_string()
    } else {
        spec.to_string()
    };

    let mut symbols = Vec::new();
    for token in spec.split(',') {
        let token = token.trim();
        let symbol = match token {
            "$" => Symbol::Sentinel,
            t if t.len() == 1 => Symbol::Regular(t.bytes().next().unwrap() as u32),
            t => return Err(UsageError(format!("bad ordering token '{t}'"))),
        };
        if symbols.contains(&symbol) {
            return Err(UsageError(format!(
                "duplicate symbol '{token}' in ordering"
            )));
        }
        symbols.push(symbol);
    }
    for &s in &symbols {
        if s != Symbol::Sentinel && !text.alphabet().contains(&s) {
            return Err(UsageError(format!("symbol '{s}' not present in the text")));
        }
    }
    for &s in text.alphabet() {
        if !symbols.contains(&s) {
            return Err(UsageError(format!(
                "symbol '{s}' of the text is missing from the ordering"
            )));
        }
    }
    AlphabetOrdering::from_symbols(symbols).map_err(|e| UsageError(e.to_string()))
}

/// Parse a comma-separated list of vertex ids.
pub fn id_list(spec: &str) -> Result<Vec<u32>, UsageError> {
    spec.split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| UsageError(format!("bad vertex id '{}'", t.trim())))
        })
        .collect()
}
