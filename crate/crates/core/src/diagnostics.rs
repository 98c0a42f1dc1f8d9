//! Brute-force verification and the potential/cost bookkeeping used to
//! check the size arguments step by step.
//!
//! Potential: `v(H) = Σ max{0, d_G(u,v) − d_H(u,v) + slack}` over unordered
//! pairs of distinct nodes. A pair unreachable in G or in H contributes 0.
//! Cost: either `#E(H)` or `Σ deg_H(v)²`.

use thiserror::Error;

use crate::graph::NodeId;
use crate::paths::{apsp, DistanceMatrix, UNREACHABLE};
use crate::spanner::{CompletionTrace, SubgraphState};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagnosticsError {
    #[error("trace has no recorded potentials")]
    MissingPotentials,
    #[error("trace recorded {found:?} with k = {k}, expected {expected:?} with k = {expected_k}")]
    WrongPotentials {
        found: PotentialSpec,
        k: u32,
        expected: PotentialSpec,
        expected_k: u32,
    },
    #[error("step {step} added no edges")]
    ZeroCostStep { step: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CostKind {
    Edges,
    DegreeSquares,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PotentialSpec {
    pub slack: u32,
    pub cost: CostKind,
}

impl PotentialSpec {
    /// `k = 2`: slack 3 with degree-square cost. `k = 6`: slack 5 with edge
    /// cost. Any other `k`: slack `k + 1` with edge cost.
    pub fn for_k(k: u32) -> Self {
        match k {
            2 => PotentialSpec {
                slack: 3,
                cost: CostKind::DegreeSquares,
            },
            6 => PotentialSpec {
                slack: 5,
                cost: CostKind::Edges,
            },
            _ => PotentialSpec {
                slack: k + 1,
                cost: CostKind::Edges,
            },
        }
    }
}

fn term(d_g: u32, d_h: u32, slack: u32) -> u64 {
    if d_g == UNREACHABLE || d_h == UNREACHABLE {
        return 0;
    }
    (u64::from(d_g) + u64::from(slack)).saturating_sub(u64::from(d_h))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Violation {
    pub pair: (NodeId, NodeId),
    pub d_g: u32,
    /// `UNREACHABLE` when H separates the pair.
    pub d_h: u32,
    /// `d_h − d_g`; `None` when `d_h` is infinite.
    pub excess: Option<u32>,
}

/// Every pair with finite `d_G` whose H-distance exceeds `d_G + k`, sorted
/// by pair. Both sides come from full APSP.
pub fn verify_spanner(h: &SubgraphState<'_>, k: u32) -> Vec<Violation> {
    let dist_g = apsp(h.host());
    let dist_h = apsp(h);
    violations_between(&dist_g, &dist_h, k)
}

pub(crate) fn violations_between(dist_g: &DistanceMatrix, dist_h: &DistanceMatrix, k: u32) -> Vec<Violation> {
    let n = dist_g.node_count();
    let mut out = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            let d_g = dist_g.get(u, v);
            let d_h = dist_h.get(u, v);
            if d_g == UNREACHABLE {
                continue;
            }
            if d_h == UNREACHABLE || u64::from(d_h) > u64::from(d_g) + u64::from(k) {
                out.push(Violation {
                    pair: (u, v),
                    d_g,
                    d_h,
                    excess: (d_h != UNREACHABLE).then(|| d_h - d_g),
                });
            }
        }
    }
    out
}

pub fn potential_v(h: &SubgraphState<'_>, slack: u32) -> u64 {
    let dist_g = apsp(h.host());
    let dist_h = apsp(h);
    potential_between(&dist_g, &dist_h, slack)
}

fn potential_between(dist_g: &DistanceMatrix, dist_h: &DistanceMatrix, slack: u32) -> u64 {
    let n = dist_g.node_count();
    (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .map(|(u, v)| term(dist_g.get(u, v), dist_h.get(u, v), slack))
        .sum()
}

pub fn cost_edges(h: &SubgraphState<'_>) -> u64 {
    h.edge_count() as u64
}

pub fn cost_degsq(h: &SubgraphState<'_>) -> u64 {
    (0..h.node_count())
        .map(|v| {
            let d = h.degree(v) as u64;
            d * d
        })
        .sum()
}

pub fn cost(h: &SubgraphState<'_>, kind: CostKind) -> u64 {
    match kind {
        CostKind::Edges => cost_edges(h),
        CostKind::DegreeSquares => cost_degsq(h),
    }
}

/// `n · Σdeg² ≥ 4m²`. Holds for every graph, so `false` means a bug.
pub fn check_cauchy_bound(h: &SubgraphState<'_>) -> bool {
    let n = h.node_count() as u128;
    let m = h.edge_count() as u128;
    n * u128::from(cost_degsq(h)) >= 4 * m * m
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PotentialReport {
    pub v: u64,
    pub c_edges: u64,
    pub c_degsq: u64,
    pub slack: u32,
}

impl PotentialReport {
    pub fn of(h: &SubgraphState<'_>, slack: u32) -> Self {
        PotentialReport {
            v: potential_v(h, slack),
            c_edges: cost_edges(h),
            c_degsq: cost_degsq(h),
            slack,
        }
    }

    /// `v ≤ slack · C(n, 2)`.
    pub fn within_potential_bound(&self, n: usize) -> bool {
        let pairs = (n as u64) * (n as u64).saturating_sub(1) / 2;
        self.v <= u64::from(self.slack) * pairs
    }

    pub fn satisfies_cauchy(&self, n: usize) -> bool {
        (n as u128) * u128::from(self.c_degsq) >= 4 * u128::from(self.c_edges).pow(2)
    }
}

/// Keeps `v(H)` and `c(H)` current while edges are inserted, by maintaining
/// the full H distance table. Each insertion costs `O(n²)`.
#[derive(Debug, Clone)]
pub struct PotentialTracker {
    spec: PotentialSpec,
    dist_g: DistanceMatrix,
    dist_h: DistanceMatrix,
    degrees: Vec<u64>,
    potential: u64,
    cost: u64,
}

impl PotentialTracker {
    pub fn new(h: &SubgraphState<'_>, spec: PotentialSpec) -> Self {
        let dist_g = apsp(h.host());
        let dist_h = apsp(h);
        let potential = potential_between(&dist_g, &dist_h, spec.slack);
        PotentialTracker {
            spec,
            degrees: (0..h.node_count()).map(|v| h.degree(v) as u64).collect(),
            cost: cost(h, spec.cost),
            dist_g,
            dist_h,
            potential,
        }
    }

    pub fn spec(&self) -> PotentialSpec {
        self.spec
    }

    /// `(v, c)` for the current H.
    pub fn values(&self) -> (u64, u64) {
        (self.potential, self.cost)
    }

    pub fn distances(&self) -> &DistanceMatrix {
        &self.dist_h
    }

    /// Records the insertion of a new edge `{a, b}` (not already in H).
    pub fn insert_edge(&mut self, a: NodeId, b: NodeId) {
        self.cost += match self.spec.cost {
            CostKind::Edges => 1,
            CostKind::DegreeSquares => 2 * self.degrees[a] + 2 * self.degrees[b] + 2,
        };
        self.degrees[a] += 1;
        self.degrees[b] += 1;

        let n = self.dist_h.node_count();
        let via = |d: u32| if d == UNREACHABLE { u64::MAX / 4 } else { u64::from(d) };
        let row_a: Vec<u64> = self.dist_h.row(a).iter().map(|&d| via(d)).collect();
        let row_b: Vec<u64> = self.dist_h.row(b).iter().map(|&d| via(d)).collect();
        for x in 0..n {
            for y in x + 1..n {
                let old = self.dist_h.get(x, y);
                let through = (row_a[x] + 1 + row_b[y]).min(row_b[x] + 1 + row_a[y]);
                if through < via(old) {
                    let new = through as u32;
                    let d_g = self.dist_g.get(x, y);
                    self.potential += term(d_g, new, self.spec.slack);
                    self.potential -= term(d_g, old, self.spec.slack);
                    self.dist_h.row_mut(x)[y] = new;
                    self.dist_h.row_mut(y)[x] = new;
                }
            }
        }
    }
}

/// Per-step change of `c_degsq − 12·v` on a 2-spanner trace. The law is
/// that every entry is `≤ 0`.
pub fn check_2spanner_step_law(trace: &CompletionTrace) -> Result<Vec<i64>, DiagnosticsError> {
    let expected = PotentialSpec::for_k(2);
    let found = trace.potential_spec.ok_or(DiagnosticsError::MissingPotentials)?;
    if found != expected || trace.k != 2 {
        return Err(DiagnosticsError::WrongPotentials {
            found,
            k: trace.k,
            expected,
            expected_k: 2,
        });
    }
    trace
        .steps
        .iter()
        .map(|step| {
            let p = step.potentials.ok_or(DiagnosticsError::MissingPotentials)?;
            let dc = p.c_after as i64 - p.c_before as i64;
            let dv = p.v_after as i64 - p.v_before as i64;
            Ok(dc - 12 * dv)
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct RatioReport {
    /// `Δv / Δc` per step, in trace order.
    pub ratios: Vec<f64>,
    pub min: Option<f64>,
    pub median: Option<f64>,
    /// `n^{2/3}`, the scale the ratios are compared against.
    pub reference: f64,
}

/// Per-step `Δv / Δc_edges` on a 6-spanner trace. Reported only; the
/// lower bound on it has no explicit constant.
pub fn measure_6spanner_step_ratio(trace: &CompletionTrace) -> Result<RatioReport, DiagnosticsError> {
    let expected = PotentialSpec::for_k(6);
    let found = trace.potential_spec.ok_or(DiagnosticsError::MissingPotentials)?;
    if found != expected || trace.k != 6 {
        return Err(DiagnosticsError::WrongPotentials {
            found,
            k: trace.k,
            expected,
            expected_k: 6,
        });
    }
    let mut ratios = Vec::with_capacity(trace.steps.len());
    for (index, step) in trace.steps.iter().enumerate() {
        let p = step.potentials.ok_or(DiagnosticsError::MissingPotentials)?;
        let dc = p.c_after.saturating_sub(p.c_before);
        if dc == 0 {
            return Err(DiagnosticsError::ZeroCostStep { step: index });
        }
        ratios.push((p.v_after as f64 - p.v_before as f64) / dc as f64);
    }
    let mut sorted = ratios.clone();
    sorted.sort_by(f64::total_cmp);
    let median = (!sorted.is_empty()).then(|| {
        let mid = sorted.len() / 2;
        if sorted.len() % 2 == 1 {
            sorted[mid]
        } else {
            (sorted[mid - 1] + sorted[mid]) / 2.0
        }
    });
    Ok(RatioReport {
        min: sorted.first().copied(),
        median,
        reference: (trace.n as f64).powf(2.0 / 3.0),
        ratios,
    })
}

/// Replays a trace on top of its seed, calling `visit` with the seed (index
/// 0) and then with H after each step (index `i + 1`).
pub fn replay_trace<'g, F>(seed: SubgraphState<'g>, trace: &CompletionTrace, mut visit: F) -> SubgraphState<'g>
where
    F: FnMut(usize, &SubgraphState<'g>),
{
    let mut h = seed;
    visit(0, &h);
    for (index, step) in trace.steps.iter().enumerate() {
        for (a, b) in step.path.edges() {
            h.insert_edge(a, b).expect("trace paths lie in the host");
        }
        visit(index + 1, &h);
    }
    h
}
