//! Size-scaling sweeps, log-log exponent fits and the CSV schemas shared
//! with the command-line tool.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use thiserror::Error;

use crate::diagnostics::{check_2spanner_step_law, PotentialSpec, Violation};
use crate::generate::{gen_gnp, gen_named, NamedFamily};
use crate::graph::{Graph, GraphError};
use crate::paths::UNREACHABLE;
use crate::spanner::{
    build_2_spanner_with, build_6_spanner_with, complete, seed_empty, CompletionTrace, Recording, SubgraphState,
};

pub const SWEEP_HEADER: &str =
    "family,n,p_or_param,seed,k,input_edges,seed_edges,final_edges,ratio_32,ratio_43,steps,wall_time_ms";
pub const TRACE_HEADER: &str = "step,u,v,d_g,d_h_before,new_edges,v_before,v_after,c_before,c_after";
pub const VIOLATION_HEADER: &str = "u,v,d_g,d_h,excess";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FitError {
    #[error("need at least 3 points, got {0}")]
    TooFewPoints(usize),
    #[error("node count {0} appears more than once")]
    DuplicateN(String),
    #[error("point ({n}, {m}) is not positive (need n > 0, m >= 1)")]
    NonPositive { n: String, m: String },
}

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("k = {0} is only available for exploration (2 and 6 have proven seeds)")]
    UnsupportedK(u32),
    #[error("sweep has no points")]
    EmptySweep,
}

/// Builds the spanner pipeline for `k`: empty seed for 2, degree-capped
/// seed for 6, and, when `allow_other_k` is set, an empty seed for any
/// other `k`.
pub fn build_spanner(
    g: &Graph,
    k: u32,
    allow_other_k: bool,
    recording: Recording,
) -> Result<(SubgraphState<'_>, CompletionTrace), ExperimentError> {
    match k {
        2 => Ok(build_2_spanner_with(g, recording)),
        6 => Ok(build_6_spanner_with(g, recording)),
        _ if allow_other_k => Ok(complete(seed_empty(g), k, recording)),
        _ => Err(ExperimentError::UnsupportedK(k)),
    }
}

/// Least-squares fit of `ln m = slope · ln n + intercept`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExponentFit {
    pub slope: f64,
    pub intercept: f64,
    pub r2: f64,
    pub points: usize,
}

pub fn fit_exponent(points: &[(f64, f64)]) -> Result<ExponentFit, FitError> {
    if points.len() < 3 {
        return Err(FitError::TooFewPoints(points.len()));
    }
    for (i, &(n, m)) in points.iter().enumerate() {
        if !(n > 0.0 && m >= 1.0) {
            return Err(FitError::NonPositive {
                n: n.to_string(),
                m: m.to_string(),
            });
        }
        if points[..i].iter().any(|&(other, _)| other == n) {
            return Err(FitError::DuplicateN(n.to_string()));
        }
    }
    let xs: Vec<f64> = points.iter().map(|&(n, _)| n.ln()).collect();
    let ys: Vec<f64> = points.iter().map(|&(_, m)| m.ln()).collect();
    let count = points.len() as f64;
    let mean_x = xs.iter().sum::<f64>() / count;
    let mean_y = ys.iter().sum::<f64>() / count;
    let sxx: f64 = xs.iter().map(|x| (x - mean_x).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mean_x) * (y - mean_y)).sum();
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let ss_tot: f64 = ys.iter().map(|y| (y - mean_y).powi(2)).sum();
    let ss_res: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (y - (slope * x + intercept)).powi(2))
        .sum();
    let r2 = if ss_tot == 0.0 { 1.0 } else { 1.0 - ss_res / ss_tot };
    Ok(ExponentFit {
        slope,
        intercept,
        r2,
        points: points.len(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SweepFamily {
    Gnp,
    Named(NamedFamily),
}

impl SweepFamily {
    pub fn name(self) -> &'static str {
        match self {
            SweepFamily::Gnp => "gnp",
            SweepFamily::Named(family) => family.name(),
        }
    }

    /// Generates one instance. `param` is the edge probability for G(n, p)
    /// and ignored for named families, which also ignore `seed`.
    pub fn generate(self, n: usize, param: f64, seed: u64) -> Result<Graph, GraphError> {
        match self {
            SweepFamily::Gnp => gen_gnp(n, param, seed),
            SweepFamily::Named(family) => gen_named(family, n),
        }
    }
}

impl FromStr for SweepFamily {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "gnp" {
            Ok(SweepFamily::Gnp)
        } else {
            s.parse().map(SweepFamily::Named)
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRecord {
    pub family: SweepFamily,
    pub n: usize,
    pub p_or_param: f64,
    pub seed: u64,
    pub k: u32,
    pub input_edges: usize,
    pub seed_edges: usize,
    pub final_edges: usize,
    pub ratio_32: f64,
    pub ratio_43: f64,
    pub steps: usize,
    pub wall_time_ms: u64,
}

#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub family: SweepFamily,
    pub ns: Vec<usize>,
    /// Edge probabilities for G(n, p); a single placeholder for named families.
    pub params: Vec<f64>,
    pub seeds: Vec<u64>,
    pub k: u32,
    pub allow_other_k: bool,
    /// Record potentials and run the 2-spanner step law on every trace.
    pub check_step_law: bool,
    /// When false, `wall_time_ms` is written as 0 so the CSV is a pure
    /// function of the configuration.
    pub timing: bool,
}

/// Fit and worst ratios for one `(family, param)` group.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupSummary {
    pub family: SweepFamily,
    pub param: f64,
    /// `None` when the group has fewer than 3 distinct `n`.
    pub fit: Option<ExponentFit>,
    pub max_ratio_32: f64,
    pub max_ratio_43: f64,
}

#[derive(Debug, Clone)]
pub struct SweepOutcome {
    pub records: Vec<SweepRecord>,
    pub groups: Vec<GroupSummary>,
    /// Steps across all traces where `c − 12v` increased (only counted
    /// with `check_step_law`).
    pub step_law_failures: usize,
    pub warnings: Vec<String>,
}

fn run_point(config: &SweepConfig, n: usize, param: f64, seed: u64) -> Result<(SweepRecord, usize), ExperimentError> {
    let g = config.family.generate(n, param, seed)?;
    let recording = if config.check_step_law && config.k == 2 {
        Recording::Potentials(PotentialSpec::for_k(2))
    } else {
        Recording::Paths
    };
    let start = Instant::now();
    let (h, trace) = build_spanner(&g, config.k, config.allow_other_k, recording)?;
    let wall_time_ms = if config.timing {
        start.elapsed().as_millis() as u64
    } else {
        0
    };
    let failures = match recording {
        Recording::Potentials(_) => check_2spanner_step_law(&trace)
            .expect("recorded with the 2-spanner potentials")
            .into_iter()
            .filter(|&d| d > 0)
            .count(),
        Recording::Paths => 0,
    };
    let nf = n.max(1) as f64;
    let final_edges = h.edge_count();
    Ok((
        SweepRecord {
            family: config.family,
            n,
            p_or_param: param,
            seed,
            k: config.k,
            input_edges: g.edge_count(),
            seed_edges: trace.seed_edge_count,
            final_edges,
            ratio_32: final_edges as f64 / nf.powf(1.5),
            ratio_43: final_edges as f64 / nf.powf(4.0 / 3.0),
            steps: trace.steps.len(),
            wall_time_ms,
        },
        failures,
    ))
}

/// Runs every `(n, param, seed)` point, in parallel, and returns records in
/// `(param, n, seed)` order together with one fit per parameter value.
/// Fits use the mean final edge count over seeds at each `n`.
pub fn run_sweep(config: &SweepConfig) -> Result<SweepOutcome, ExperimentError> {
    if !matches!(config.k, 2 | 6) && !config.allow_other_k {
        return Err(ExperimentError::UnsupportedK(config.k));
    }
    let params: Vec<f64> = match config.family {
        SweepFamily::Gnp => config.params.clone(),
        SweepFamily::Named(_) => vec![0.0],
    };
    let seeds: Vec<u64> = match config.family {
        SweepFamily::Gnp => config.seeds.clone(),
        SweepFamily::Named(_) => config.seeds.first().copied().into_iter().collect(),
    };
    let mut points = Vec::new();
    for &param in &params {
        for &n in &config.ns {
            for &seed in &seeds {
                points.push((param, n, seed));
            }
        }
    }
    points.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
    points.dedup();
    if points.is_empty() {
        return Err(ExperimentError::EmptySweep);
    }

    let results: Vec<(SweepRecord, usize)> = points
        .par_iter()
        .map(|&(param, n, seed)| run_point(config, n, param, seed))
        .collect::<Result<_, _>>()?;
    let step_law_failures = results.iter().map(|(_, f)| f).sum();
    let records: Vec<SweepRecord> = results.into_iter().map(|(r, _)| r).collect();

    let mut groups = Vec::new();
    let mut warnings = Vec::new();
    for &param in &params {
        let members: Vec<&SweepRecord> = records.iter().filter(|r| r.p_or_param == param).collect();
        if members.is_empty() {
            continue;
        }
        let mut by_n: BTreeMap<usize, Vec<f64>> = BTreeMap::new();
        for r in &members {
            by_n.entry(r.n).or_default().push(r.final_edges as f64);
        }
        let fit_points: Vec<(f64, f64)> = by_n
            .iter()
            .map(|(&n, ms)| (n as f64, ms.iter().sum::<f64>() / ms.len() as f64))
            .collect();
        let fit = match fit_exponent(&fit_points) {
            Ok(fit) => Some(fit),
            Err(err) => {
                warnings.push(format!("{} p={param}: fit omitted ({err})", config.family.name()));
                None
            }
        };
        if groups.iter().any(|g: &GroupSummary| g.param == param) {
            continue;
        }
        groups.push(GroupSummary {
            family: config.family,
            param,
            fit,
            max_ratio_32: members.iter().map(|r| r.ratio_32).fold(0.0, f64::max),
            max_ratio_43: members.iter().map(|r| r.ratio_43).fold(0.0, f64::max),
        });
    }

    Ok(SweepOutcome {
        records,
        groups,
        step_law_failures,
        warnings,
    })
}

pub fn sweep_csv(records: &[SweepRecord]) -> String {
    let mut out = String::new();
    out.push_str(SWEEP_HEADER);
    out.push('\n');
    for r in records {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{:.6},{:.6},{},{}",
            r.family.name(),
            r.n,
            r.p_or_param,
            r.seed,
            r.k,
            r.input_edges,
            r.seed_edges,
            r.final_edges,
            r.ratio_32,
            r.ratio_43,
            r.steps,
            r.wall_time_ms
        )
        .expect("writing to a String");
    }
    out
}

fn distance_field(d: u32) -> String {
    if d == UNREACHABLE {
        "inf".to_owned()
    } else {
        d.to_string()
    }
}

/// One row per step, numbered from 1. Potential columns are empty when
/// the trace was recorded without potentials.
pub fn trace_csv(trace: &CompletionTrace) -> String {
    let mut out = String::new();
    out.push_str(TRACE_HEADER);
    out.push('\n');
    for (index, step) in trace.steps.iter().enumerate() {
        let potentials = match step.potentials {
            Some(p) => format!("{},{},{},{}", p.v_before, p.v_after, p.c_before, p.c_after),
            None => ",,,".to_owned(),
        };
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            index + 1,
            step.pair.0,
            step.pair.1,
            step.d_g,
            distance_field(step.d_h_before),
            step.new_edges,
            potentials
        )
        .expect("writing to a String");
    }
    out
}

pub fn violations_csv(violations: &[Violation]) -> String {
    let mut out = String::new();
    out.push_str(VIOLATION_HEADER);
    out.push('\n');
    for v in violations {
        let excess = v.excess.map_or_else(|| "inf".to_owned(), |e| e.to_string());
        writeln!(
            out,
            "{},{},{},{},{}",
            v.pair.0,
            v.pair.1,
            v.d_g,
            distance_field(v.d_h),
            excess
        )
        .expect("writing to a String");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagnostics::verify_spanner;

    #[test]
    fn exact_power_law() {
        let points: Vec<_> = [10.0f64, 100.0, 1000.0]
            .iter()
            .map(|&n| (n, n.powf(1.5).round()))
            .collect();
        let fit = fit_exponent(&points).unwrap();
        assert!((fit.slope - 1.5).abs() < 0.01, "{fit:?}");
        assert!(fit.r2 > 0.999);
        assert_eq!(fit.points, 3);
    }

    #[test]
    fn constant_series_has_zero_slope() {
        let fit = fit_exponent(&[(10.0, 5.0), (100.0, 5.0), (1000.0, 5.0)]).unwrap();
        assert!(fit.slope.abs() < 0.01);
        assert!((fit.intercept - 5f64.ln()).abs() < 1e-12);
        assert_eq!(fit.r2, 1.0);
    }

    #[test]
    fn degenerate_fits() {
        assert_eq!(
            fit_exponent(&[(10.0, 5.0), (100.0, 5.0)]),
            Err(FitError::TooFewPoints(2))
        );
        assert!(matches!(
            fit_exponent(&[(10.0, 5.0), (10.0, 6.0), (100.0, 5.0)]),
            Err(FitError::DuplicateN(_))
        ));
        assert!(matches!(
            fit_exponent(&[(10.0, 0.0), (20.0, 6.0), (100.0, 5.0)]),
            Err(FitError::NonPositive { .. })
        ));
    }

    #[test]
    fn build_rejects_unproven_k() {
        let g = gen_named(NamedFamily::Complete, 4).unwrap();
        assert!(matches!(
            build_spanner(&g, 7, false, Recording::Paths),
            Err(ExperimentError::UnsupportedK(7))
        ));
        let (h, _) = build_spanner(&g, 7, true, Recording::Paths).unwrap();
        assert!(verify_spanner(&h, 7).is_empty());
    }

    #[test]
    fn trace_csv_layout() {
        let k4 = gen_named(NamedFamily::Complete, 4).unwrap();
        let (_, trace) = build_spanner(&k4, 2, false, Recording::Potentials(PotentialSpec::for_k(2))).unwrap();
        let csv = trace_csv(&trace);
        let lines: Vec<_> = csv.lines().collect();
        assert_eq!(lines[0], TRACE_HEADER);
        assert_eq!(lines[1], "1,0,1,1,inf,1,0,3,0,2");
        assert_eq!(lines.len(), 4);
        let (_, plain) = build_spanner(&k4, 2, false, Recording::Paths).unwrap();
        assert_eq!(trace_csv(&plain).lines().nth(1), Some("1,0,1,1,inf,1,,,,"));
    }

    #[test]
    fn violation_csv_layout() {
        let c5 = gen_named(NamedFamily::Cycle, 5).unwrap();
        let h = SubgraphState::from_edges(&c5, [(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        assert_eq!(
            violations_csv(&verify_spanner(&h, 2)),
            "u,v,d_g,d_h,excess\n0,4,1,4,3\n"
        );
        let g = Graph::from_edges(2, [(0, 1)]).unwrap();
        let empty = SubgraphState::empty(&g);
        assert_eq!(
            violations_csv(&verify_spanner(&empty, 2)),
            "u,v,d_g,d_h,excess\n0,1,1,inf,inf\n"
        );
    }

    #[test]
    fn small_sweep_is_deterministic_and_fits() {
        let config = SweepConfig {
            family: SweepFamily::Gnp,
            ns: vec![16, 32, 24],
            params: vec![0.3],
            seeds: vec![2, 1],
            k: 2,
            allow_other_k: false,
            check_step_law: true,
            timing: false,
        };
        let a = run_sweep(&config).unwrap();
        let b = run_sweep(&config).unwrap();
        assert_eq!(sweep_csv(&a.records), sweep_csv(&b.records));
        let order: Vec<_> = a.records.iter().map(|r| (r.n, r.seed)).collect();
        assert_eq!(order, vec![(16, 1), (16, 2), (24, 1), (24, 2), (32, 1), (32, 2)]);
        assert_eq!(a.groups.len(), 1);
        assert!(a.groups[0].fit.is_some());
        assert_eq!(a.step_law_failures, 0);
        for r in &a.records {
            assert!(r.seed_edges <= r.final_edges && r.final_edges <= r.input_edges);
            assert_eq!(r.wall_time_ms, 0);
        }
        assert!(sweep_csv(&a.records).starts_with(SWEEP_HEADER));
    }

    #[test]
    fn too_small_sweep_warns() {
        let config = SweepConfig {
            family: SweepFamily::Named(NamedFamily::Cycle),
            ns: vec![5, 6],
            params: vec![],
            seeds: vec![0],
            k: 6,
            allow_other_k: false,
            check_step_law: false,
            timing: true,
        };
        let outcome = run_sweep(&config).unwrap();
        assert_eq!(outcome.records.len(), 2);
        assert_eq!(outcome.groups[0].fit, None);
        assert_eq!(outcome.warnings.len(), 1);
    }
}
