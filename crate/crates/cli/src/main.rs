//! `gme` — geometric measure of entanglement from the command line.
//!
//! Subcommands: `gme` (single state), `bench` (reference tables/figures),
//! `hierarchy` (per-partition entanglement), `sweep` (family parameter
//! sweeps), `search` (Monte Carlo support search). Payloads go to stdout;
//! a JSON run report (full configuration echo) goes to stderr.
//!
//! Exit codes: 0 success, 1 benchmark row mismatch, 2 malformed input,
//! 3 zero-norm state.

mod bench;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gme_core::states::{FamilyName, StateFamily};
use gme_core::{
    best_rank_one, hierarchy_report, linear_grid, load_state, mc_search, states, sweep,
    ComplexTensor, GmeError, OptimizerConfig, SearchConfig, SweepSpec,
};
use report::RunReport;

#[derive(Parser)]
#[command(name = "gme", about = "Geometric measure of entanglement for pure multipartite states")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute λ and E = 1 − λ² for a single state.
    Gme(GmeArgs),
    /// Regenerate a reference table or figure dataset with a pass/fail column.
    Bench(BenchArgs),
    /// Entanglement across all partitions of the parties.
    Hierarchy(HierarchyArgs),
    /// Sweep one family parameter over a grid.
    Sweep(SweepArgs),
    /// Monte Carlo search over equal-amplitude supports.
    Search(SearchArgs),
}

#[derive(Args, Clone)]
struct OptFlags {
    /// Random restarts per optimizer run.
    #[arg(long, default_value_t = 20)]
    restarts: usize,
    /// Maximum alternating sweeps per restart.
    #[arg(long = "max-iter", default_value_t = 500)]
    max_iter: usize,
    /// Convergence threshold on the per-sweep overlap gain.
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
    /// Base RNG seed; fixes restarts and sampling exactly.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl OptFlags {
    fn config(&self) -> OptimizerConfig {
        OptimizerConfig {
            restarts: self.restarts,
            max_iterations: self.max_iter,
            tolerance: self.tol,
            seed: self.seed,
        }
    }
}

#[derive(Args, Clone)]
struct StateSource {
    /// JSON state file ({"dims": [...], "amplitudes": [{"idx": [...], "re": .., "im": ..}]}).
    #[arg(long, conflicts_with = "family")]
    file: Option<PathBuf>,
    /// Named family: dicke, wsup, qudit, weighted-w3, weighted-w4, w5, ghz,
    /// hs, l, bssb4-family, bssb4, bssb5, phi.
    #[arg(long)]
    family: Option<String>,
    /// Family parameter, repeatable: --param n=4 --param k=2.
    #[arg(long = "param", value_name = "NAME=VALUE")]
    params: Vec<String>,
    /// Keep file amplitudes as given instead of normalizing.
    #[arg(long = "no-normalize")]
    no_normalize: bool,
}

impl StateSource {
    fn family(&self) -> Result<StateFamily, GmeError> {
        let name = self
            .family
            .as_deref()
            .ok_or_else(|| GmeError::InvalidParams("missing --family".into()))?;
        let mut fam = StateFamily::new(FamilyName::from_str(name)?);
        for p in &self.params {
            let (key, value) = p
                .split_once('=')
                .ok_or_else(|| GmeError::InvalidParams(format!("bad --param '{p}'")))?;
            let value: f64 = value
                .parse()
                .map_err(|_| GmeError::InvalidParams(format!("bad --param value '{p}'")))?;
            fam = fam.with_param(key, value);
        }
        Ok(fam)
    }

    fn tensor(&self) -> Result<ComplexTensor, GmeError> {
        match (&self.file, &self.family) {
            (Some(path), None) => load_state(path, !self.no_normalize),
            (None, Some(_)) => self.family()?.state(),
            _ => Err(GmeError::InvalidParams(
                "exactly one of --file or --family is required".into(),
            )),
        }
    }
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Output {
    Csv,
    Json,
}

#[derive(Args)]
struct GmeArgs {
    #[command(flatten)]
    source: StateSource,
    #[command(flatten)]
    opt: OptFlags,
    #[arg(long, value_enum, default_value_t = Output::Csv)]
    output: Output,
}

#[derive(Copy, Clone, ValueEnum)]
enum Selector {
    Table1,
    Table2,
    Table3,
    Fig1,
    Fig2,
    Fig3,
    Fig4,
    States,
}

#[derive(Args)]
struct BenchArgs {
    selector: Selector,
    #[command(flatten)]
    opt: OptFlags,
    /// Include the optional large-dimension qudit rows (table2 only).
    #[arg(long)]
    full: bool,
    /// Memory cap in tensor entries for qudit construction.
    #[arg(long = "mem-cap", default_value_t = states::DEFAULT_MEMORY_CAP)]
    mem_cap: u128,
}

#[derive(Args)]
struct HierarchyArgs {
    #[command(flatten)]
    source: StateSource,
    #[command(flatten)]
    opt: OptFlags,
    /// One row per block-size signature (maximum overlap within each).
    #[arg(long = "by-signature")]
    by_signature: bool,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    source: StateSource,
    #[command(flatten)]
    opt: OptFlags,
    /// Grid as NAME=START:STOP:COUNT, e.g. t=0:6.2832:201 (radians).
    #[arg(long = "param-grid", value_name = "NAME=START:STOP:COUNT")]
    param_grid: String,
}

#[derive(Args)]
struct SearchArgs {
    /// Number of qubits.
    #[arg(long)]
    qubits: usize,
    /// Unit amplitudes per sampled support.
    #[arg(long)]
    ones: usize,
    /// Number of Monte Carlo samples.
    #[arg(long)]
    samples: usize,
    /// Survivors to keep and confirm.
    #[arg(long = "keep-top", default_value_t = 10)]
    keep_top: usize,
    #[command(flatten)]
    opt: OptFlags,
}

fn exit_for(err: &GmeError) -> ExitCode {
    match err {
        GmeError::ZeroTensor => ExitCode::from(3),
        _ => ExitCode::from(2),
    }
}

fn cmd_gme(args: &GmeArgs) -> Result<(), GmeError> {
    let started = Instant::now();
    let cfg = args.opt.config();
    let t = args.source.tensor()?;
    let r = best_rank_one(&t, &cfg)?;
    match args.output {
        Output::Csv => {
            println!("lambda,E");
            println!("{:.6},{:.6}", r.overlap, r.entanglement);
            for (mode, factor) in r.best_state.factors.iter().enumerate() {
                println!("# factor {mode} (re,im)");
                for z in factor {
                    println!("{:.6},{:.6}", z.re, z.im);
                }
            }
        }
        Output::Json => {
            let factors: Vec<Vec<[f64; 2]>> = r
                .best_state
                .factors
                .iter()
                .map(|f| f.iter().map(|z| [z.re, z.im]).collect())
                .collect();
            let payload = serde_json::json!({
                "lambda": r.overlap,
                "E": r.entanglement,
                "factors": factors,
                "restart_overlaps": r.restart_overlaps,
                "iterations": r.iterations_used,
                "converged": r.converged,
            });
            println!("{payload}");
        }
    }
    RunReport::new(&cfg, started).emit();
    Ok(())
}

fn cmd_bench(args: &BenchArgs) -> Result<bool, GmeError> {
    let started = Instant::now();
    let cfg = args.opt.config();
    let all_pass = match args.selector {
        Selector::Table1 => bench::table1(&cfg)?,
        Selector::Table2 => bench::table2(&cfg, args.full, args.mem_cap)?,
        Selector::Table3 => bench::table3(&cfg)?,
        Selector::Fig1 => bench::fig1(&cfg)?,
        Selector::Fig2 => bench::fig2(&cfg)?,
        Selector::Fig3 => bench::fig3(&cfg)?,
        Selector::Fig4 => bench::fig4(&cfg)?,
        Selector::States => {
            let cfg = OptimizerConfig {
                restarts: cfg.restarts.max(30),
                tolerance: cfg.tolerance.min(1e-13),
                ..cfg
            };
            bench::states_table(&cfg)?
        }
    };
    RunReport::new(&args.opt.config(), started).emit();
    Ok(all_pass)
}

fn cmd_hierarchy(args: &HierarchyArgs) -> Result<(), GmeError> {
    let started = Instant::now();
    let cfg = args.opt.config();
    let t = args.source.tensor()?;
    let report = hierarchy_report(&t, &cfg, args.by_signature)?;
    println!("partition,dims,lambda,E");
    for row in &report.rows {
        let dims: Vec<String> = row.merged_dims.iter().map(|d| d.to_string()).collect();
        println!(
            "\"{}\",{},{:.6},{:.6}",
            row.partition.display_one_based(),
            dims.join("x"),
            row.overlap,
            row.entanglement
        );
    }
    RunReport::new(&cfg, started).emit();
    Ok(())
}

fn parse_grid(spec: &str) -> Result<(String, Vec<f64>), GmeError> {
    let bad = || GmeError::InvalidParams(format!("bad --param-grid '{spec}'"));
    let (name, rest) = spec.split_once('=').ok_or_else(bad)?;
    let parts: Vec<&str> = rest.split(':').collect();
    if parts.len() != 3 {
        return Err(bad());
    }
    let start: f64 = parts[0].parse().map_err(|_| bad())?;
    let stop: f64 = parts[1].parse().map_err(|_| bad())?;
    let count: usize = parts[2].parse().map_err(|_| bad())?;
    if count == 0 {
        return Err(bad());
    }
    Ok((name.to_string(), linear_grid(start, stop, count)))
}

fn cmd_sweep(args: &SweepArgs) -> Result<(), GmeError> {
    let started = Instant::now();
    let cfg = args.opt.config();
    let (parameter, grid) = parse_grid(&args.param_grid)?;
    let spec = SweepSpec {
        family: args.source.family()?,
        parameter,
        grid,
    };
    let points = sweep(&spec, &cfg)?;
    println!("param,lambda,E");
    for p in &points {
        println!("{:.6},{:.6},{:.6}", p.value, p.overlap, p.entanglement);
    }
    RunReport::new(&cfg, started).emit();
    Ok(())
}

fn cmd_search(args: &SearchArgs) -> Result<(), GmeError> {
    let started = Instant::now();
    let cfg = SearchConfig {
        optimizer: OptimizerConfig {
            restarts: args.opt.restarts.min(8),
            ..args.opt.config()
        },
        keep_top: args.keep_top,
        ..SearchConfig::new(args.qubits, args.ones, args.samples, args.opt.seed)
    };
    let hits = mc_search(&cfg)?;
    for hit in &hits {
        println!(
            "{}",
            serde_json::json!({
                "support": hit.support,
                "lambda": hit.overlap,
                "E": hit.entanglement,
            })
        );
    }
    RunReport::new(&args.opt.config(), started).emit();
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome: Result<bool, GmeError> = match &cli.command {
        Command::Gme(args) => cmd_gme(args).map(|()| true),
        Command::Bench(args) => cmd_bench(args),
        Command::Hierarchy(args) => cmd_hierarchy(args).map(|()| true),
        Command::Sweep(args) => cmd_sweep(args).map(|()| true),
        Command::Search(args) => cmd_search(args).map(|()| true),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            exit_for(&e)
        }
    }
}
