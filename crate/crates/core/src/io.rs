//! Edge-list files and vertex label maps.
//!
//! An edge-list file starts with a header line `n <count>` followed by one
//! whitespace-separated `u v` pair per line (0-based ids). Blank lines and
//! lines starting with `#` are ignored when reading. The writer emits edges
//! with `u < v` in ascending order, LF-terminated.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::Graph;

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_usize(tok: &str, line: usize, what: &str) -> Result<usize> {
    tok.parse()
        .map_err(|_| Error::Parse { line, msg: format!("expected {what}, found {tok:?}") })
}

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = content_lines(text);
    let (line, header) = lines
        .next()
        .ok_or(Error::Parse { line: 1, msg: "missing header `n <count>`".into() })?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    let n = match toks.as_slice() {
        ["n", count] => parse_usize(count, line, "vertex count")?,
        _ => return Err(Error::Parse { line, msg: format!("expected header `n <count>`, found {header:?}") }),
    };
    let mut edges = Vec::new();
    for (line, l) in lines {
        let toks: Vec<&str> = l.split_whitespace().collect();
        let [u, v] = toks.as_slice() else {
            return Err(Error::Parse { line, msg: format!("expected `u v`, found {l:?}") });
        };
        let (u, v) = (parse_usize(u, line, "vertex id")?, parse_usize(v, line, "vertex id")?);
        if u >= n || v >= n {
            return Err(Error::Parse { line, msg: format!("vertex out of range for n = {n}") });
        }
        edges.push((u, v));
    }
    Graph::from_edges(n, edges)
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("n {}\n", g.n());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

pub fn read_edge_list(path: impl AsRef<Path>) -> Result<Graph> {
    parse_edge_list(&std::fs::read_to_string(path)?)
}

/// Bidirectional map between integer vertex ids and display labels,
/// read from lines of the form `<label> <id>`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LabelMap {
    by_label: BTreeMap<String, usize>,
    by_id: BTreeMap<usize, String>,
}

impl LabelMap {
    pub fn parse(text: &str) -> Result<Self> {
        let mut map = LabelMap::default();
        for (line, l) in content_lines(text) {
            let toks: Vec<&str> = l.split_whitespace().collect();
            let [label, id] = toks.as_slice() else {
                return Err(Error::Parse { line, msg: format!("expected `<label> <id>`, found {l:?}") });
            };
            let id = parse_usize(id, line, "vertex id")?;
            if map.by_label.insert(label.to_string(), id).is_some() || map.by_id.insert(id, label.to_string()).is_some() {
                return Err(Error::Parse { line, msg: format!("duplicate label or id in {l:?}") });
            }
        }
        Ok(map)
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    /// Label of `id`, falling back to the decimal id.
    pub fn label(&self, id: usize) -> String {
        self.by_id.get(&id).cloned().unwrap_or_else(|| id.to_string())
    }

    /// Resolves a label, or a bare integer id.
    pub fn resolve(&self, token: &str) -> Result<usize> {
        if let Some(&id) = self.by_label.get(token) {
            return Ok(id);
        }
        token
            .parse()
            .map_err(|_| Error::input(format!("unknown vertex label {token:?}")))
    }
}
