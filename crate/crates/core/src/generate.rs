//! Deterministic graph generators.
//!
//! `gen_gnp` draws from ChaCha8 (`rand_chacha::ChaCha8Rng::seed_from_u64`),
//! a fixed, portable stream cipher generator: the same `(n, p, seed)` gives
//! the same graph on every platform. Candidate pairs `(u, v)`, `u < v`, are
//! visited in lexicographic order and each consumes exactly one `u64` draw
//! `r`; the edge is kept iff `r < ⌊p · 2^64⌋` (all pairs when `p = 1`).

use std::fmt;
use std::str::FromStr;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::graph::{Graph, GraphError, NodeId};

pub fn gen_gnp(n: usize, p: f64, seed: u64) -> Result<Graph, GraphError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(GraphError::InvalidParameter(format!(
            "edge probability {p} outside [0, 1]"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // 2^64 as f64 is exact; the cast saturates below u64::MAX for p < 1.
    let threshold = (p * 18_446_744_073_709_551_616.0) as u64;
    let mut adjacency: Vec<Vec<NodeId>> = vec![Vec::new(); n];
    for u in 0..n {
        for v in u + 1..n {
            let draw = rng.next_u64();
            if p >= 1.0 || draw < threshold {
                adjacency[u].push(v);
                adjacency[v].push(u);
            }
        }
    }
    Ok(Graph::from_unsorted_adjacency(adjacency))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NamedFamily {
    Path,
    Cycle,
    Complete,
    Star,
    /// `n` is the side length; the grid has `n²` nodes numbered row-major.
    Grid,
}

impl NamedFamily {
    pub const ALL: [NamedFamily; 5] = [
        NamedFamily::Path,
        NamedFamily::Cycle,
        NamedFamily::Complete,
        NamedFamily::Star,
        NamedFamily::Grid,
    ];

    pub fn name(self) -> &'static str {
        match self {
            NamedFamily::Path => "path",
            NamedFamily::Cycle => "cycle",
            NamedFamily::Complete => "complete",
            NamedFamily::Star => "star",
            NamedFamily::Grid => "grid",
        }
    }

    pub fn min_n(self) -> usize {
        match self {
            NamedFamily::Cycle => 3,
            _ => 1,
        }
    }
}

impl fmt::Display for NamedFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for NamedFamily {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        NamedFamily::ALL
            .into_iter()
            .find(|family| family.name() == s)
            .ok_or_else(|| GraphError::InvalidParameter(format!("unknown graph family `{s}`")))
    }
}

pub fn gen_named(family: NamedFamily, n: usize) -> Result<Graph, GraphError> {
    if n < family.min_n() {
        return Err(GraphError::FamilyTooSmall {
            family: family.name(),
            n,
            min: family.min_n(),
        });
    }
    let edges: Vec<(NodeId, NodeId)> = match family {
        NamedFamily::Path => (1..n).map(|v| (v - 1, v)).collect(),
        NamedFamily::Cycle => (0..n).map(|v| (v, (v + 1) % n)).collect(),
        NamedFamily::Complete => (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect(),
        NamedFamily::Star => (1..n).map(|v| (0, v)).collect(),
        NamedFamily::Grid => {
            let mut edges = Vec::with_capacity(2 * n * n);
            for row in 0..n {
                for col in 0..n {
                    let id = row * n + col;
                    if col + 1 < n {
                        edges.push((id, id + 1));
                    }
                    if row + 1 < n {
                        edges.push((id, id + n));
                    }
                }
            }
            return Graph::from_edges(n * n, edges);
        }
    };
    Graph::from_edges(n, edges)
}
