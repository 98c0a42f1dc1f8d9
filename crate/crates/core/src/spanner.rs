//! Seed subgraphs and the additive spanner-completion loop.
//!
//! Completion scans unordered pairs `(u, v)`, `u < v`, in lexicographic
//! order exactly once. Whenever `d_H(u, v) > d_G(u, v) + k` it inserts the
//! canonical G-shortest path from `u` to `v` (see [`BfsTree`]). Inserting
//! edges never lengthens a distance in H, so a pair that passed stays
//! passed and one pass leaves no violation behind.

use std::collections::VecDeque;

use thiserror::Error;

use crate::diagnostics::{PotentialSpec, PotentialTracker};
use crate::graph::{Adjacency, Graph, NodeId};
use crate::paths::{bfs_row, BfsTree, Path, UNREACHABLE};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpannerError {
    #[error("edge ({u}, {v}) is not an edge of the host graph")]
    NotHostEdge { u: NodeId, v: NodeId },
}

/// An edge subset H of a fixed host graph G, spanning all of G's nodes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgraphState<'g> {
    host: &'g Graph,
    adjacency: Vec<Vec<NodeId>>,
    edge_count: usize,
}

impl<'g> SubgraphState<'g> {
    pub fn empty(host: &'g Graph) -> Self {
        SubgraphState {
            host,
            adjacency: vec![Vec::new(); host.node_count()],
            edge_count: 0,
        }
    }

    pub fn from_edges<I>(host: &'g Graph, edges: I) -> Result<Self, SpannerError>
    where
        I: IntoIterator<Item = (NodeId, NodeId)>,
    {
        let mut state = Self::empty(host);
        for (u, v) in edges {
            state.insert_edge(u, v)?;
        }
        Ok(state)
    }

    pub fn host(&self) -> &'g Graph {
        self.host
    }

    pub fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn degree(&self, v: NodeId) -> usize {
        self.adjacency[v].len()
    }

    pub fn neighbors(&self, v: NodeId) -> &[NodeId] {
        &self.adjacency[v]
    }

    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        u < self.node_count() && self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Adds `{u, v}`; returns whether it was new.
    pub fn insert_edge(&mut self, u: NodeId, v: NodeId) -> Result<bool, SpannerError> {
        if !self.host.has_edge(u, v) {
            return Err(SpannerError::NotHostEdge { u, v });
        }
        let Err(slot) = self.adjacency[u].binary_search(&v) else {
            return Ok(false);
        };
        self.adjacency[u].insert(slot, v);
        let slot = self.adjacency[v].binary_search(&u).unwrap_err();
        self.adjacency[v].insert(slot, u);
        self.edge_count += 1;
        Ok(true)
    }

    /// Edges `(u, v)`, `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.adjacency.iter().enumerate().flat_map(|(u, list)| {
            let start = list.partition_point(|&v| v <= u);
            list[start..].iter().map(move |&v| (u, v))
        })
    }

    pub fn to_graph(&self) -> Graph {
        Graph::from_unsorted_adjacency(self.adjacency.clone())
    }
}

impl Adjacency for SubgraphState<'_> {
    fn node_count(&self) -> usize {
        SubgraphState::node_count(self)
    }

    fn neighbors(&self, v: NodeId) -> &[NodeId] {
        SubgraphState::neighbors(self, v)
    }
}

pub fn seed_empty(g: &Graph) -> SubgraphState<'_> {
    SubgraphState::empty(g)
}

/// Every node selects its `min(cap, deg)` lowest-id incident edges; H is
/// the union. A node may end above `cap` through other nodes' picks, but a
/// node below `cap` in H always has all of its G-edges in H.
pub fn seed_degree_capped(g: &Graph, cap: usize) -> SubgraphState<'_> {
    let mut h = SubgraphState::empty(g);
    for v in 0..g.node_count() {
        for &w in g.neighbors(v).iter().take(cap) {
            h.insert_edge(v, w).expect("selected edges come from the host");
        }
    }
    h
}

/// `⌊n^{1/3}⌋` in exact integer arithmetic.
pub fn default_cap(n: usize) -> usize {
    let n = n as u128;
    let mut c = (n as f64).cbrt() as u128;
    while c > 0 && c * c * c > n {
        c -= 1;
    }
    while (c + 1) * (c + 1) * (c + 1) <= n {
        c += 1;
    }
    c as usize
}

/// Potential and cost values around one completion step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StepPotentials {
    pub v_before: u64,
    pub v_after: u64,
    pub c_before: u64,
    pub c_after: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompletionStep {
    pub pair: (NodeId, NodeId),
    pub d_g: u32,
    /// `UNREACHABLE` when u and v were in different components of H.
    pub d_h_before: u32,
    pub path: Path,
    /// Path edges that were not already in H.
    pub new_edges: usize,
    pub potentials: Option<StepPotentials>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompletionTrace {
    pub n: usize,
    pub k: u32,
    /// Which potential/cost pair was recorded, if any.
    pub potential_spec: Option<PotentialSpec>,
    pub steps: Vec<CompletionStep>,
    pub seed_edge_count: usize,
    pub final_edge_count: usize,
}

/// What to record per completion step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Recording {
    /// Pairs, paths and new-edge counts only.
    Paths,
    /// Also the potential and cost before and after each step. Maintains
    /// all-pairs distances of H, `O(n²)` per inserted edge.
    Potentials(PotentialSpec),
}

pub fn complete(h: SubgraphState<'_>, k: u32, recording: Recording) -> (SubgraphState<'_>, CompletionTrace) {
    let mut h = h;
    let g = h.host();
    let n = g.node_count();
    let seed_edge_count = h.edge_count();
    let (potential_spec, mut tracker) = match recording {
        Recording::Paths => (None, None),
        Recording::Potentials(spec) => (Some(spec), Some(PotentialTracker::new(&h, spec))),
    };
    let mut steps = Vec::new();
    let mut added = Vec::new();

    for u in 0..n {
        let tree = BfsTree::new(g, u).expect("source in range");
        let mut dist_h = bfs_row(&h, u);
        for v in u + 1..n {
            let d_g = tree.dist[v];
            if d_g == UNREACHABLE {
                continue;
            }
            let d_h = dist_h[v];
            if d_h != UNREACHABLE && u64::from(d_h) <= u64::from(d_g) + u64::from(k) {
                continue;
            }
            let path = tree.path_to(v).expect("v is reachable in G");
            let before = tracker.as_ref().map(PotentialTracker::values);
            added.clear();
            for (a, b) in path.edges() {
                if h.insert_edge(a, b).expect("path edges come from the host") {
                    added.push((a, b));
                    if let Some(t) = tracker.as_mut() {
                        t.insert_edge(a, b);
                    }
                }
            }
            debug_assert!(!added.is_empty(), "a violated pair always gains an edge");
            relax_row(&mut dist_h, &h, &added);
            let potentials = before.zip(tracker.as_ref().map(PotentialTracker::values)).map(
                |((v_before, c_before), (v_after, c_after))| StepPotentials {
                    v_before,
                    v_after,
                    c_before,
                    c_after,
                },
            );
            steps.push(CompletionStep {
                pair: (u, v),
                d_g,
                d_h_before: d_h,
                path,
                new_edges: added.len(),
                potentials,
            });
        }
    }

    let trace = CompletionTrace {
        n,
        k,
        potential_spec,
        steps,
        seed_edge_count,
        final_edge_count: h.edge_count(),
    };
    (h, trace)
}

/// Brings a BFS row up to date after edge insertions. Distances only
/// decrease, so relaxing outward from the endpoints of the new edges
/// reaches the same fixpoint as a fresh BFS.
fn relax_row<A: Adjacency>(dist: &mut [u32], h: &A, new_edges: &[(NodeId, NodeId)]) {
    let mut queue = VecDeque::new();
    for &(a, b) in new_edges {
        for (x, y) in [(a, b), (b, a)] {
            if dist[x] != UNREACHABLE && dist[x] + 1 < dist[y] {
                dist[y] = dist[x] + 1;
                queue.push_back(y);
            }
        }
    }
    while let Some(x) = queue.pop_front() {
        let next = dist[x] + 1;
        for &y in h.neighbors(x) {
            if next < dist[y] {
                dist[y] = next;
                queue.push_back(y);
            }
        }
    }
}

/// Empty seed, then completion with `k = 2`, recording the degree-square
/// cost and slack-3 potential.
pub fn build_2_spanner(g: &Graph) -> (SubgraphState<'_>, CompletionTrace) {
    build_2_spanner_with(g, Recording::Potentials(PotentialSpec::for_k(2)))
}

pub fn build_2_spanner_with(g: &Graph, recording: Recording) -> (SubgraphState<'_>, CompletionTrace) {
    complete(seed_empty(g), 2, recording)
}

/// Degree-capped seed with cap `⌊n^{1/3}⌋`, then completion with `k = 6`,
/// recording the edge-count cost and slack-5 potential.
pub fn build_6_spanner(g: &Graph) -> (SubgraphState<'_>, CompletionTrace) {
    build_6_spanner_with(g, Recording::Potentials(PotentialSpec::for_k(6)))
}

pub fn build_6_spanner_with(g: &Graph, recording: Recording) -> (SubgraphState<'_>, CompletionTrace) {
    let seed = seed_degree_capped(g, default_cap(g.node_count()));
    complete(seed, 6, recording)
}
