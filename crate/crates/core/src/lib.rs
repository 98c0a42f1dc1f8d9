//! Purely additive 2- and 6-spanners of unweighted undirected graphs built
//! by shortest-path completion.
//!
//! Starting from a seed subgraph H (empty for `k = 2`, a degree-capped
//! selection of `⌊n^{1/3}⌋` edges per node for `k = 6`), completion adds a
//! shortest G-path for every pair with `d_H(u, v) > d_G(u, v) + k`. The
//! [`diagnostics`] module verifies the result by brute force and tracks the
//! potential and cost functions that bound the final size.
//!
//! ```
//! use spanner_core::{build_2_spanner, gen_named, verify_spanner, NamedFamily};
//!
//! let k4 = gen_named(NamedFamily::Complete, 4).unwrap();
//! let (h, trace) = build_2_spanner(&k4);
//! assert_eq!(h.edge_count(), 3);
//! assert_eq!(trace.steps.len(), 3);
//! assert!(verify_spanner(&h, 2).is_empty());
//! ```

pub mod diagnostics;
pub mod experiment;
pub mod generate;
pub mod graph;
pub mod io;
pub mod paths;
pub mod spanner;

pub use diagnostics::{
    check_2spanner_step_law, check_cauchy_bound, cost_degsq, cost_edges, measure_6spanner_step_ratio, potential_v,
    verify_spanner, CostKind, PotentialReport, PotentialSpec, Violation,
};
pub use generate::{gen_gnp, gen_named, NamedFamily};
pub use graph::{Adjacency, Graph, GraphError, NodeId};
pub use io::{parse_edge_list, parse_edge_list_with, serialize_edge_list, ParseOptions};
pub use paths::{apsp, bfs_distances, shortest_path, DistanceMatrix, Path, UNREACHABLE};
pub use spanner::{
    build_2_spanner, build_6_spanner, complete, default_cap, seed_degree_capped, seed_empty, CompletionStep,
    CompletionTrace, Recording, SubgraphState,
};
