//! Plain-text edge lists.
//!
//! One edge per line as two whitespace separated vertex labels; `#` starts a
//! comment. Vertices are renumbered densely in order of first appearance and
//! the original labels are kept for output.

use std::collections::HashMap;
use std::collections::HashSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::MultiGraph;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ParseOptions {
    /// Keep only the first occurrence of each unordered vertex pair. Used to
    /// symmetrize directed data where `a b` and `b a` both appear.
    pub collapse_duplicates: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseWarning {
    SelfLoop { line: usize, label: String },
    DuplicateDropped { line: usize },
}

#[derive(Clone, Debug)]
pub struct ParsedGraph {
    pub graph: MultiGraph,
    /// Original label of each dense vertex id.
    pub labels: Vec<String>,
    pub warnings: Vec<ParseWarning>,
}

impl ParsedGraph {
    pub fn self_loops(&self) -> usize {
        self.warnings
            .iter()
            .filter(|w| matches!(w, ParseWarning::SelfLoop { .. }))
            .count()
    }
}

pub fn parse_edge_list(text: &str) -> Result<ParsedGraph> {
    parse_edge_list_with(text, &ParseOptions::default())
}

pub fn parse_edge_list_with(text: &str, opts: &ParseOptions) -> Result<ParsedGraph> {
    let mut ids: HashMap<String, usize> = HashMap::new();
    let mut labels: Vec<String> = Vec::new();
    let mut edges = Vec::new();
    let mut warnings = Vec::new();
    let mut seen = HashSet::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = content.split_whitespace().collect();
        match tokens.len() {
            0 => continue,
            2 => {}
            n => {
                return Err(Error::Parse {
                    line,
                    message: format!("expected two vertex labels, found {n} tokens"),
                })
            }
        }
        // Loops still register their vertex so it appears in the graph.
        let a = intern(&mut ids, &mut labels, tokens[0]);
        let b = intern(&mut ids, &mut labels, tokens[1]);
        if a == b {
            warnings.push(ParseWarning::SelfLoop {
                line,
                label: tokens[0].to_string(),
            });
            continue;
        }
        if opts.collapse_duplicates && !seen.insert((a.min(b), a.max(b))) {
            warnings.push(ParseWarning::DuplicateDropped { line });
            continue;
        }
        edges.push((a, b));
    }

    let graph = MultiGraph::new(labels.len(), edges)?;
    Ok(ParsedGraph {
        graph,
        labels,
        warnings,
    })
}

fn intern(ids: &mut HashMap<String, usize>, labels: &mut Vec<String>, label: &str) -> usize {
    if let Some(&id) = ids.get(label) {
        return id;
    }
    let id = labels.len();
    ids.insert(label.to_string(), id);
    labels.push(label.to_string());
    id
}

/// Writes the graph as an edge list, using `labels` when given and dense ids
/// otherwise.
pub fn to_edge_list(g: &MultiGraph, labels: Option<&[String]>) -> String {
    let mut out = String::new();
    for &(a, b) in g.edges() {
        match labels {
            Some(l) => writeln!(out, "{} {}", l[a], l[b]),
            None => writeln!(out, "{a} {b}"),
        }
        .expect("writing to a String");
    }
    out
}
