//! Command-line harness: generate multigraphs, color them with any of the
//! four solvers, verify colorings against a bound, and run benchmark grids.
//!
//! Exit codes: 0 success, 1 verification failure, 2 I/O or configuration
//! error. Every `color` run self-verifies before exiting; no path emits an
//! unverified coloring with exit 0. All randomness flows from `--seed`, so
//! identical invocations produce byte-identical outputs.

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use edgecolor::coloring::{read_coloring_raw, write_coloring, PartialColoring};
use edgecolor::graph::{parse_graph, random_multigraph, shannon_extremal, Multigraph};
use edgecolor::localsim::{color_distributed, DistParams};
use edgecolor::multistep::{color_sequential_random, MultiStepParams};
use edgecolor::verify::{verify, verify_assignment};
use serde::Serialize;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

#[derive(Parser)]
#[command(name = "edgecolor", about = "Multigraph edge coloring within the Shannon and Vizing bounds", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Algorithm {
    /// Deterministic batched disjoint-chain augmentation.
    Det,
    /// Randomized sequential multi-step chain coloring.
    Seq,
    /// Round-synchronous distributed stage simulation.
    Dist,
    /// Sequential coloring within the degree-plus-multiplicity bound.
    Vizing,
}

#[derive(Clone, Debug)]
enum BoundArg {
    Shannon,
    Vizing,
    Fixed(usize),
}

impl std::str::FromStr for BoundArg {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "shannon" => Ok(BoundArg::Shannon),
            "vizing" => Ok(BoundArg::Vizing),
            other => other
                .parse()
                .map(BoundArg::Fixed)
                .map_err(|_| format!("expected `shannon`, `vizing`, or an integer, got `{other}`")),
        }
    }
}

impl BoundArg {
    fn resolve(&self, g: &Multigraph) -> usize {
        match self {
            BoundArg::Shannon => g.shannon_colors(),
            BoundArg::Vizing => g.vizing_colors(),
            BoundArg::Fixed(r) => *r,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Write a multigraph file: random with caps, or the extremal triangle.
    Generate {
        #[arg(short = 'n', long)]
        n: Option<usize>,
        #[arg(short = 'd', long)]
        delta: Option<usize>,
        #[arg(short = 'm', long)]
        mu: Option<usize>,
        #[arg(short = 's', long, default_value_t = 0)]
        seed: u64,
        /// Build the fat triangle for this (even) degree instead.
        #[arg(long, conflicts_with_all = ["n", "delta", "mu"])]
        extremal: Option<usize>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Color a graph file and self-verify the result.
    Color {
        #[arg(long)]
        algorithm: Algorithm,
        /// Path cap parameter for seq/dist (default `max(16, 4Δ²)`).
        #[arg(long)]
        ell: Option<usize>,
        /// Per-stage iteration budget for dist (default `⌈4·log₂ n⌉`).
        #[arg(long)]
        budget: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// JSON-lines stats output.
        #[arg(long)]
        stats: Option<PathBuf>,
    },
    /// Check a coloring file against a graph and a bound.
    Verify {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        coloring: PathBuf,
        /// `shannon`, `vizing`, or an explicit color count.
        #[arg(long, default_value = "shannon")]
        bound: BoundArg,
    },
    /// Run a grid of instances and emit aggregated JSON-lines stats.
    Bench {
        /// Grid spec, e.g. `n=256,1024;delta=4;mu=2;seeds=3`.
        #[arg(long)]
        grid: String,
        #[arg(long)]
        algorithm: Algorithm,
        #[arg(long)]
        ell: Option<usize>,
        #[arg(long)]
        budget: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        stats: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run() -> Result<ExitCode> {
    let cli = Cli::parse();
    match cli.command {
        Command::Generate {
            n,
            delta,
            mu,
            seed,
            extremal,
            out,
        } => {
            let g = match extremal {
                Some(d) => shannon_extremal(d)?,
                None => {
                    let (Some(n), Some(delta)) = (n, delta) else {
                        bail!("generate needs -n and -d (or --extremal)");
                    };
                    let mu = mu.unwrap_or(1);
                    random_multigraph(n, delta, mu, seed)?
                }
            };
            write_atomic(&out, &g.to_text())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Color {
            algorithm,
            ell,
            budget,
            seed,
            input,
            out,
            stats,
        } => {
            let text = std::fs::read_to_string(&input)
                .with_context(|| format!("reading {}", input.display()))?;
            let g = parse_graph(&text)?;
            let (phi, stats_lines, bound) = run_solver(&g, algorithm, ell, budget, seed)?;
            let report = verify(&g, &phi, bound);
            write_atomic(&out, &write_coloring(&g, &phi))?;
            if let Some(path) = stats {
                write_atomic(&path, &stats_lines)?;
            }
            if report.accepted() {
                println!(
                    "ok: {} edges, {} colors (bound {})",
                    g.m(),
                    report.colors_used,
                    bound
                );
                Ok(ExitCode::SUCCESS)
            } else {
                eprintln!(
                    "verification failed: proper={} uncolored={} colors={}/{}",
                    report.proper, report.uncolored, report.colors_used, report.bound
                );
                Ok(ExitCode::from(1))
            }
        }
        Command::Verify {
            graph,
            coloring,
            bound,
        } => {
            let gtext = std::fs::read_to_string(&graph)
                .with_context(|| format!("reading {}", graph.display()))?;
            let g = parse_graph(&gtext)?;
            let ctext = std::fs::read_to_string(&coloring)
                .with_context(|| format!("reading {}", coloring.display()))?;
            let assignment = read_coloring_raw(&g, &ctext)?;
            let bound = bound.resolve(&g);
            let report = verify_assignment(&g, &assignment, bound);
            if report.accepted() {
                println!("ok: proper, {} colors within {}", report.colors_used, bound);
                Ok(ExitCode::SUCCESS)
            } else {
                for &(e, f, c) in report.violations.iter().take(10) {
                    eprintln!("conflict: edges {e} and {f} both carry color {c}");
                }
                eprintln!(
                    "rejected: proper={} uncolored={} colors={}/{}",
                    report.proper, report.uncolored, report.colors_used, report.bound
                );
                Ok(ExitCode::from(1))
            }
        }
        Command::Bench {
            grid,
            algorithm,
            ell,
            budget,
            seed,
            stats,
        } => {
            let lines = run_bench(&grid, algorithm, ell, budget, seed)?;
            match stats {
                Some(path) => write_atomic(&path, &lines)?,
                None => print!("{lines}"),
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

/// Runs one solver, returning the coloring, its stats as JSON lines, and
/// the bound it must verify against.
fn run_solver(
    g: &Multigraph,
    algorithm: Algorithm,
    ell: Option<usize>,
    budget: Option<usize>,
    seed: u64,
) -> Result<(PartialColoring, String, usize)> {
    let mut lines = String::new();
    let phi = match algorithm {
        Algorithm::Det => {
            let (phi, run) = edgecolor::deterministic::color_deterministic(g)?;
            for b in &run.batches {
                writeln!(lines, "{}", serde_json::to_string(b)?)?;
            }
            phi
        }
        Algorithm::Seq => {
            let mut params = MultiStepParams::for_graph(g);
            if let Some(ell) = ell {
                params.ell = ell;
            }
            let (phi, run) = color_sequential_random(g, &params, seed)?;
            for c in &run.calls {
                writeln!(lines, "{}", serde_json::to_string(c)?)?;
            }
            phi
        }
        Algorithm::Dist => {
            let mut params = DistParams::for_graph(g, seed);
            if let Some(ell) = ell {
                params.ell = ell;
            }
            if let Some(budget) = budget {
                params.budget = budget;
            }
            let (phi, run) = color_distributed(g, &params)?;
            for s in &run.stages {
                writeln!(lines, "{}", serde_json::to_string(s)?)?;
            }
            phi
        }
        Algorithm::Vizing => {
            let (phi, run) = edgecolor::vizing::color_vizing(g)?;
            writeln!(lines, "{}", serde_json::to_string(&run)?)?;
            phi
        }
    };
    let bound = match algorithm {
        Algorithm::Vizing => g.vizing_colors(),
        _ => g.shannon_colors(),
    };
    Ok((phi, lines, bound))
}

#[derive(Serialize)]
struct BenchRecord {
    v: u32,
    algorithm: &'static str,
    n: usize,
    delta: usize,
    mu: usize,
    seed: u64,
    m: usize,
    colors_used: usize,
    bound: usize,
    iterations: u64,
    stages: usize,
    chain_length_histogram: Vec<(usize, usize)>,
    wall_ms: f64,
}

fn algorithm_name(a: Algorithm) -> &'static str {
    match a {
        Algorithm::Det => "det",
        Algorithm::Seq => "seq",
        Algorithm::Dist => "dist",
        Algorithm::Vizing => "vizing",
    }
}

type GridSpec = (Vec<usize>, Vec<usize>, Vec<usize>, u64);

/// Grid spec: `key=value;...` with comma-separated lists for `n`, `delta`,
/// `mu`, and `seeds=K` meaning seeds `0..K`.
fn parse_grid(spec: &str) -> Result<GridSpec> {
    let (mut ns, mut deltas, mut mus, mut seeds) = (vec![256], vec![4], vec![2], 1u64);
    for part in spec.split(';') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let (key, value) = part
            .split_once('=')
            .with_context(|| format!("bad grid component `{part}`"))?;
        let list: Result<Vec<usize>> = value
            .split(',')
            .map(|v| v.trim().parse::<usize>().context("bad grid number"))
            .collect();
        match key.trim() {
            "n" => ns = list?,
            "delta" | "d" => deltas = list?,
            "mu" | "m" => mus = list?,
            "seeds" | "s" => seeds = list?[0] as u64,
            other => bail!("unknown grid key `{other}`"),
        }
    }
    Ok((ns, deltas, mus, seeds))
}

fn run_bench(
    spec: &str,
    algorithm: Algorithm,
    ell: Option<usize>,
    budget: Option<usize>,
    base_seed: u64,
) -> Result<String> {
    let (ns, deltas, mus, seeds) = parse_grid(spec)?;
    let mut out = String::new();
    for &n in &ns {
        for &delta in &deltas {
            for &mu in &mus {
                if mu > delta {
                    continue;
                }
                for seed in 0..seeds {
                    let seed = base_seed + seed;
                    let g = random_multigraph(n, delta, mu, seed)?;
                    let start = Instant::now();
                    let (phi, lines, bound) = run_solver(&g, algorithm, ell, budget, seed)?;
                    let wall_ms = start.elapsed().as_secs_f64() * 1e3;
                    let report = verify(&g, &phi, bound);
                    if !report.accepted() {
                        bail!("bench run failed verification: n={n} delta={delta} mu={mu} seed={seed}");
                    }
                    let (iterations, stages, histogram) =
                        summarize(algorithm, &lines)?;
                    let rec = BenchRecord {
                        v: edgecolor::stats::STATS_VERSION,
                        algorithm: algorithm_name(algorithm),
                        n,
                        delta,
                        mu,
                        seed,
                        m: g.m(),
                        colors_used: report.colors_used,
                        bound,
                        iterations,
                        stages,
                        chain_length_histogram: histogram,
                        wall_ms,
                    };
                    writeln!(out, "{}", serde_json::to_string(&rec)?)?;
                }
            }
        }
    }
    Ok(out)
}

/// Pulls aggregate counters out of the per-run JSON lines.
type BenchSummary = (u64, usize, Vec<(usize, usize)>);

fn summarize(algorithm: Algorithm, lines: &str) -> Result<BenchSummary> {
    let mut iterations = 0u64;
    let mut stages = 0usize;
    let mut histogram: std::collections::BTreeMap<usize, usize> = Default::default();
    for line in lines.lines() {
        let value: serde_json::Value = serde_json::from_str(line)?;
        match algorithm {
            Algorithm::Det => {
                iterations += 1;
            }
            Algorithm::Seq => {
                iterations += value["iterations"].as_u64().unwrap_or(0) + 1;
                if let Some(len) = value["chain_length"].as_u64() {
                    *histogram.entry(len as usize).or_default() += 1;
                }
            }
            Algorithm::Dist => {
                stages += 1;
                iterations += value["survivors"].as_u64().unwrap_or(0);
            }
            Algorithm::Vizing => {
                iterations += value["iterations"].as_u64().unwrap_or(0);
            }
        }
    }
    Ok((iterations, stages, histogram.into_iter().collect()))
}

fn write_atomic(path: &Path, content: &str) -> Result<()> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            std::fs::create_dir_all(parent)?;
        }
    }
    std::fs::write(path, content).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}
