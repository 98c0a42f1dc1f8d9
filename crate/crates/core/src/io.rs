//! Edge-list text format.
//!
//! ```text
//! # optional comments
//! n 4
//! 0 1
//! 1 2
//! ```
//!
//! The `n <count>` header is optional and may only appear before the first
//! edge. Without it the node count is one more than the largest id seen;
//! with it the node count is the larger of the two.

use std::collections::BTreeMap;

use crate::graph::{Graph, GraphError, NodeId};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ParseOptions {
    /// Compact the ids that occur in edges to `0..k` (ascending order
    /// preserved). When off, ids are used verbatim and unused ids below the
    /// node count become isolated nodes.
    pub renumber: bool,
}

pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
    parse_edge_list_with(text, ParseOptions::default())
}

pub fn parse_edge_list_with(text: &str, options: ParseOptions) -> Result<Graph, GraphError> {
    let mut header: Option<usize> = None;
    let mut edges = Vec::new();
    for (index, raw) in text.lines().enumerate() {
        let line_no = index + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens[0] == "n" {
            if header.is_some() || !edges.is_empty() {
                return Err(parse_error(line_no, "header `n <count>` must come first"));
            }
            if tokens.len() != 2 {
                return Err(parse_error(line_no, "expected `n <count>`"));
            }
            header = Some(parse_id(tokens[1], line_no)?);
            continue;
        }
        if tokens.len() != 2 {
            return Err(parse_error(
                line_no,
                format!("expected `u v`, found {} tokens", tokens.len()),
            ));
        }
        let u = parse_id(tokens[0], line_no)?;
        let v = parse_id(tokens[1], line_no)?;
        if u == v {
            return Err(GraphError::SelfLoop { node: u });
        }
        edges.push((u, v));
    }

    if options.renumber {
        let mut ids = BTreeMap::new();
        for &(u, v) in &edges {
            ids.insert(u, 0);
            ids.insert(v, 0);
        }
        for (next, slot) in ids.values_mut().enumerate() {
            *slot = next;
        }
        let n = header.unwrap_or(0).max(ids.len());
        return Graph::from_edges(n, edges.iter().map(|(u, v)| (ids[u], ids[v])));
    }

    let seen = edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0);
    Graph::from_edges(header.unwrap_or(0).max(seen), edges)
}

/// Canonical form: header line, then one `u v` line per edge with `u < v`
/// in lexicographic order, joined by `\n` with no trailing newline.
pub fn serialize_edge_list(g: &Graph) -> String {
    let mut out = format!("n {}", g.node_count());
    for (u, v) in g.edges() {
        out.push('\n');
        out.push_str(&u.to_string());
        out.push(' ');
        out.push_str(&v.to_string());
    }
    out
}

fn parse_id(token: &str, line: usize) -> Result<NodeId, GraphError> {
    token
        .parse::<NodeId>()
        .map_err(|_| parse_error(line, format!("`{token}` is not a non-negative integer")))
}

fn parse_error(line: usize, message: impl Into<String>) -> GraphError {
    GraphError::Parse {
        line,
        message: message.into(),
    }
}
