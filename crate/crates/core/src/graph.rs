//! Simple undirected unweighted graphs over dense node ids `0..n`.

use thiserror::Error;

/// Dense node identifier in `0..n`.
pub type NodeId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop at node {node}")]
    SelfLoop { node: NodeId },
    #[error("node {node} out of range for graph with {n} nodes")]
    NodeOutOfRange { node: NodeId, n: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("family `{family}` needs n >= {min}, got {n}")]
    FamilyTooSmall { family: &'static str, n: usize, min: usize },
    #[error("no path from {from} to {to}")]
    NoPath { from: NodeId, to: NodeId },
}

/// Read-only adjacency view shared by host graphs and subgraph states, so
/// the BFS routines run unchanged on either.
pub trait Adjacency {
    fn node_count(&self) -> usize;
    /// Neighbors of `v` in ascending id order.
    fn neighbors(&self, v: NodeId) -> &[NodeId];
}

/// Immutable simple graph stored as sorted adjacency lists.
///
/// Invariants: no self-loops, no parallel edges, every list sorted
/// ascending, and `v ∈ adj(u) ⇔ u ∈ adj(v)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adjacency: Vec<Vec<NodeId>>,
    edge_count: usize,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            adjacency: vec![Vec::new(); n],
            edge_count: 0,
        }
    }

    /// Builds a graph from an edge iterator. Duplicate and reversed
    /// duplicate edges collapse; self-loops and out-of-range ids are errors.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (NodeId, NodeId)>,
    {
        let mut adjacency = vec![Vec::new(); n];
        for (u, v) in edges {
            if u == v {
                return Err(GraphError::SelfLoop { node: u });
            }
            for node in [u, v] {
                if node >= n {
                    return Err(GraphError::NodeOutOfRange { node, n });
                }
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        Ok(Self::from_unsorted_adjacency(adjacency))
    }

    pub(crate) fn from_unsorted_adjacency(mut adjacency: Vec<Vec<NodeId>>) -> Self {
        let mut degree_sum = 0;
        for list in &mut adjacency {
            list.sort_unstable();
            list.dedup();
            degree_sum += list.len();
        }
        Graph {
            adjacency,
            edge_count: degree_sum / 2,
        }
    }

    pub fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn neighbors(&self, v: NodeId) -> &[NodeId] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: NodeId) -> usize {
        self.adjacency[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        u < self.node_count() && self.adjacency[u].binary_search(&v).is_ok()
    }

    /// All edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.adjacency.iter().enumerate().flat_map(|(u, list)| {
            let start = list.partition_point(|&v| v <= u);
            list[start..].iter().map(move |&v| (u, v))
        })
    }

    pub fn is_connected(&self) -> bool {
        if self.node_count() == 0 {
            return true;
        }
        crate::paths::bfs_distances(self, 0)
            .map(|row| row.iter().all(|&d| d != crate::paths::UNREACHABLE))
            .unwrap_or(false)
    }
}

impl Adjacency for Graph {
    fn node_count(&self) -> usize {
        Graph::node_count(self)
    }

    fn neighbors(&self, v: NodeId) -> &[NodeId] {
        Graph::neighbors(self, v)
    }
}
