//! `spanners`: generate graphs, build and verify additive spanners, and run
//! size-scaling sweeps.
//!
//! Exit codes: 0 success, 1 verification failure, 2 input contract failure.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use spanner_core::diagnostics::verify_spanner;
use spanner_core::experiment::{
    build_spanner, run_sweep, sweep_csv, trace_csv, violations_csv, SweepConfig, SweepFamily,
};
use spanner_core::{
    parse_edge_list_with, serialize_edge_list, Graph, ParseOptions, PotentialSpec, Recording, SubgraphState,
};

#[derive(Parser)]
#[command(
    name = "spanners",
    version,
    about = "Additive 2- and 6-spanners by shortest-path completion"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a generated graph as an edge list.
    Gen {
        /// gnp, path, cycle, complete, star or grid (n = side length)
        #[arg(long)]
        family: String,
        #[arg(long)]
        n: usize,
        /// Edge probability (gnp only).
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Build a spanner of an edge-list graph.
    Build {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        out: PathBuf,
        /// Per-step CSV with potentials and costs.
        #[arg(long)]
        trace_out: Option<PathBuf>,
        /// Allow k other than 2 and 6 (empty seed).
        #[arg(long)]
        unsafe_k: bool,
        /// Skip the brute-force verification of the result.
        #[arg(long)]
        no_selfcheck: bool,
        /// Compact node ids appearing in the input to 0..n.
        #[arg(long)]
        renumber: bool,
    },
    /// Check that one edge list is an additive k-spanner of another.
    Verify {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        spanner: PathBuf,
        #[arg(long)]
        k: u32,
    },
    /// Build spanners over a grid of generated graphs and fit the size exponent.
    Sweep {
        #[arg(long)]
        family: String,
        #[arg(long = "n", value_delimiter = ',', required = true)]
        ns: Vec<usize>,
        #[arg(long = "p", value_delimiter = ',', default_value = "0.5")]
        ps: Vec<f64>,
        /// Seeds per point, numbered from --seed-base.
        #[arg(long, default_value_t = 1)]
        seeds: u64,
        #[arg(long, default_value_t = 0)]
        seed_base: u64,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Record potentials and check the k = 2 step law on every trace.
        #[arg(long)]
        check_step_law: bool,
        /// Write wall_time_ms as 0 so the CSV is reproducible byte for byte.
        #[arg(long)]
        no_timing: bool,
        #[arg(long)]
        unsafe_k: bool,
    },
}

/// A failed check, as opposed to bad input.
struct VerificationFailed;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Gen {
            family,
            n,
            p,
            seed,
            out,
        } => cmd_gen(&family, n, p, seed, &out),
        Command::Build {
            input,
            k,
            out,
            trace_out,
            unsafe_k,
            no_selfcheck,
            renumber,
        } => cmd_build(&input, k, &out, trace_out.as_deref(), unsafe_k, !no_selfcheck, renumber),
        Command::Verify { graph, spanner, k } => cmd_verify(&graph, &spanner, k),
        Command::Sweep {
            family,
            ns,
            ps,
            seeds,
            seed_base,
            k,
            out,
            check_step_law,
            no_timing,
            unsafe_k,
        } => {
            let config = SweepConfig {
                family: match family.parse() {
                    Ok(family) => family,
                    Err(err) => return input_error(err.into()),
                },
                ns,
                params: ps,
                seeds: (seed_base..seed_base + seeds).collect(),
                k,
                allow_other_k: unsafe_k,
                check_step_law,
                timing: !no_timing,
            };
            cmd_sweep(&config, out.as_deref())
        }
    };
    match result {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(VerificationFailed)) => ExitCode::from(1),
        Err(err) => input_error(err),
    }
}

fn input_error(err: anyhow::Error) -> ExitCode {
    eprintln!("error: {err:#}");
    ExitCode::from(2)
}

type Outcome = Result<Result<(), VerificationFailed>>;

fn read_graph(path: &Path, options: ParseOptions) -> Result<Graph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_edge_list_with(&text, options).with_context(|| format!("parsing {}", path.display()))
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}

fn cmd_gen(family: &str, n: usize, p: f64, seed: u64, out: &Path) -> Outcome {
    let family: SweepFamily = family.parse()?;
    let g = family.generate(n, p, seed)?;
    write_file(out, &serialize_edge_list(&g))?;
    println!("n={} m={}", g.node_count(), g.edge_count());
    Ok(Ok(()))
}

fn cmd_build(
    input: &Path,
    k: u32,
    out: &Path,
    trace_out: Option<&Path>,
    unsafe_k: bool,
    selfcheck: bool,
    renumber: bool,
) -> Outcome {
    let g = read_graph(input, ParseOptions { renumber })?;
    let recording = match trace_out {
        Some(_) => Recording::Potentials(PotentialSpec::for_k(k)),
        None => Recording::Paths,
    };
    let (h, trace) = build_spanner(&g, k, unsafe_k, recording).context("pass --unsafe-k to explore other values")?;
    write_file(out, &serialize_edge_list(&h.to_graph()))?;
    if let Some(path) = trace_out {
        write_file(path, &trace_csv(&trace))?;
    }
    println!(
        "n={} m_in={} m_seed={} m_out={} steps={}",
        g.node_count(),
        g.edge_count(),
        trace.seed_edge_count,
        h.edge_count(),
        trace.steps.len()
    );
    if selfcheck {
        let violations = verify_spanner(&h, k);
        if !violations.is_empty() {
            eprintln!("self-check failed: {} violating pairs", violations.len());
            print!("{}", violations_csv(&violations));
            return Ok(Err(VerificationFailed));
        }
    }
    Ok(Ok(()))
}

fn cmd_verify(graph: &Path, spanner: &Path, k: u32) -> Outcome {
    let g = read_graph(graph, ParseOptions::default())?;
    let s = read_graph(spanner, ParseOptions::default())?;
    if s.node_count() > g.node_count() {
        bail!(
            "spanner has {} nodes but the graph has only {}",
            s.node_count(),
            g.node_count()
        );
    }
    let h = SubgraphState::from_edges(&g, s.edges()).context("spanner is not a subgraph of the graph")?;
    let violations = verify_spanner(&h, k);
    if violations.is_empty() {
        println!(
            "ok: additive {k}-spanner ({} of {} edges)",
            h.edge_count(),
            g.edge_count()
        );
        return Ok(Ok(()));
    }
    print!("{}", violations_csv(&violations));
    eprintln!("{} violating pairs", violations.len());
    Ok(Err(VerificationFailed))
}

fn cmd_sweep(config: &SweepConfig, out: Option<&Path>) -> Outcome {
    let outcome = run_sweep(config)?;
    let csv = sweep_csv(&outcome.records);
    let mut summary: Box<dyn Write> = match out {
        Some(path) => {
            write_file(path, &csv)?;
            Box::new(std::io::stdout())
        }
        None => {
            print!("{csv}");
            Box::new(std::io::stderr())
        }
    };
    for warning in &outcome.warnings {
        eprintln!("warning: {warning}");
    }
    for group in &outcome.groups {
        let fit = match group.fit {
            Some(fit) => format!("slope={:.4} r2={:.4} points={}", fit.slope, fit.r2, fit.points),
            None => "slope=NA".to_owned(),
        };
        writeln!(
            summary,
            "fit family={} p={} k={} {fit} max_ratio_32={:.6} max_ratio_43={:.6}",
            group.family.name(),
            group.param,
            config.k,
            group.max_ratio_32,
            group.max_ratio_43
        )?;
    }
    if config.check_step_law {
        writeln!(summary, "step_law_failures={}", outcome.step_law_failures)?;
        if outcome.step_law_failures > 0 {
            return Ok(Err(VerificationFailed));
        }
    }
    Ok(Ok(()))
}
