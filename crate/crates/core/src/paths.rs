//! Unweighted shortest paths: BFS rows, all-pairs tables and deterministic
//! path extraction.

use std::collections::VecDeque;

use rayon::prelude::*;

use crate::graph::{Adjacency, Graph, GraphError, NodeId};

/// Distance marker for pairs in different components.
pub const UNREACHABLE: u32 = u32::MAX;

pub fn is_finite(d: u32) -> bool {
    d != UNREACHABLE
}

pub fn bfs_distances<G: Adjacency + ?Sized>(g: &G, source: NodeId) -> Result<Vec<u32>, GraphError> {
    let n = g.node_count();
    if source >= n {
        return Err(GraphError::NodeOutOfRange { node: source, n });
    }
    Ok(bfs_row(g, source))
}

pub(crate) fn bfs_row<G: Adjacency + ?Sized>(g: &G, source: NodeId) -> Vec<u32> {
    let mut dist = vec![UNREACHABLE; g.node_count()];
    let mut queue = VecDeque::new();
    dist[source] = 0;
    queue.push_back(source);
    while let Some(x) = queue.pop_front() {
        let next = dist[x] + 1;
        for &y in g.neighbors(x) {
            if dist[y] == UNREACHABLE {
                dist[y] = next;
                queue.push_back(y);
            }
        }
    }
    dist
}

/// BFS distances plus the deterministic parent of every reached node.
///
/// The parent of `v` is the lowest-id neighbor of `v` one level closer to
/// the source. The frontier is expanded level by level in ascending id
/// order, so the first discoverer of a node is exactly that neighbor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BfsTree {
    pub source: NodeId,
    pub dist: Vec<u32>,
    pub parent: Vec<Option<NodeId>>,
}

impl BfsTree {
    pub fn new(g: &Graph, source: NodeId) -> Result<Self, GraphError> {
        let n = g.node_count();
        if source >= n {
            return Err(GraphError::NodeOutOfRange { node: source, n });
        }
        let mut dist = vec![UNREACHABLE; n];
        let mut parent = vec![None; n];
        dist[source] = 0;
        let mut frontier = vec![source];
        let mut level = 0;
        while !frontier.is_empty() {
            level += 1;
            let mut next = Vec::new();
            for &x in &frontier {
                for &y in g.neighbors(x) {
                    if dist[y] == UNREACHABLE {
                        dist[y] = level;
                        parent[y] = Some(x);
                        next.push(y);
                    }
                }
            }
            next.sort_unstable();
            frontier = next;
        }
        Ok(BfsTree { source, dist, parent })
    }

    pub fn path_to(&self, target: NodeId) -> Result<Path, GraphError> {
        if target >= self.dist.len() {
            return Err(GraphError::NodeOutOfRange {
                node: target,
                n: self.dist.len(),
            });
        }
        if self.dist[target] == UNREACHABLE {
            return Err(GraphError::NoPath {
                from: self.source,
                to: target,
            });
        }
        let mut nodes = vec![target];
        let mut cursor = target;
        while let Some(p) = self.parent[cursor] {
            nodes.push(p);
            cursor = p;
        }
        nodes.reverse();
        Ok(Path { nodes })
    }
}

/// A simple path `w_0, …, w_r`; its length is `r`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Path {
    nodes: Vec<NodeId>,
}

impl Path {
    pub fn nodes(&self) -> &[NodeId] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.nodes.windows(2).map(|w| (w[0], w[1]))
    }
}

pub fn shortest_path(g: &Graph, u: NodeId, v: NodeId) -> Result<Path, GraphError> {
    let n = g.node_count();
    if v >= n {
        return Err(GraphError::NodeOutOfRange { node: v, n });
    }
    BfsTree::new(g, u)?.path_to(v)
}

/// Largest number of path nodes adjacent (in `g`) to a single node off the
/// path, and to a single node on the path. Shortest paths keep these at
/// most 3 and 2 respectively.
pub fn path_contacts(g: &Graph, path: &Path) -> (usize, usize) {
    let mut on_path = vec![false; g.node_count()];
    for &w in path.nodes() {
        on_path[w] = true;
    }
    let mut off_max = 0;
    let mut on_max = 0;
    for x in 0..g.node_count() {
        let contacts = g.neighbors(x).iter().filter(|&&y| on_path[y]).count();
        if on_path[x] {
            on_max = on_max.max(contacts);
        } else {
            off_max = off_max.max(contacts);
        }
    }
    (off_max, on_max)
}

/// Row-major `n × n` hop-distance table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    dist: Vec<u32>,
}

impl DistanceMatrix {
    pub fn from_rows(rows: Vec<Vec<u32>>) -> Self {
        let n = rows.len();
        let mut dist = Vec::with_capacity(n * n);
        for row in rows {
            assert_eq!(row.len(), n, "distance rows must be square");
            dist.extend(row);
        }
        DistanceMatrix { n, dist }
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    /// Raw entry; `UNREACHABLE` for disconnected pairs.
    pub fn get(&self, u: NodeId, v: NodeId) -> u32 {
        self.dist[u * self.n + v]
    }

    pub fn finite(&self, u: NodeId, v: NodeId) -> Option<u32> {
        Some(self.get(u, v)).filter(|&d| is_finite(d))
    }

    pub fn row(&self, u: NodeId) -> &[u32] {
        &self.dist[u * self.n..(u + 1) * self.n]
    }

    pub(crate) fn row_mut(&mut self, u: NodeId) -> &mut [u32] {
        &mut self.dist[u * self.n..(u + 1) * self.n]
    }
}

/// One BFS per source. Rows are computed in parallel; each row is a pure
/// function of the graph so the result equals the sequential one.
pub fn apsp<G: Adjacency + Sync + ?Sized>(g: &G) -> DistanceMatrix {
    let rows = (0..g.node_count()).into_par_iter().map(|u| bfs_row(g, u)).collect();
    DistanceMatrix::from_rows(rows)
}
