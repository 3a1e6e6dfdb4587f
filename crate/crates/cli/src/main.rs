use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use eftspan_cli::commands::{
    run_build, run_census, run_verify, BuildRequest, CensusRequest, VerifyRequest,
    DEFAULT_EXACT_BUDGET,
};
use eftspan_cli::sweep::{run_sweep, to_csv, SweepConfig};
use eftspan_cli::{error_exit_code, exit};
use eftspan_core::generators::WeightMode;
use eftspan_core::greedy::Algorithm;
use eftspan_core::verify::{VerifyMode, VerifyOutcome, DEFAULT_VERIFY_BUDGET};

#[derive(Parser)]
#[command(
    name = "eftspan",
    about = "Build, verify, and analyze edge-fault-tolerant graph spanners",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a fault-tolerant spanner and write it with its trace.
    Build(BuildOpts),
    /// Check that a spanner file is fault tolerant for its base graph.
    Verify(VerifyOpts),
    /// Sweep a parameter grid and record sizes against the reference bound.
    Sweep(SweepOpts),
    /// Count path families and choke sets for a graph plus blocking set.
    Census(CensusOpts),
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgOpt {
    Exact,
    Approx,
}

impl From<AlgOpt> for Algorithm {
    fn from(a: AlgOpt) -> Algorithm {
        match a {
            AlgOpt::Exact => Algorithm::Exact,
            AlgOpt::Approx => Algorithm::Approximate,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgChoice {
    Exact,
    Approx,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeOpt {
    Exhaustive,
    Sampled,
}

#[derive(Args)]
struct BuildOpts {
    /// Input graph file.
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    f: usize,
    #[arg(long)]
    k: usize,
    #[arg(long, value_enum)]
    alg: AlgOpt,
    /// Output spanner file.
    #[arg(long)]
    out: PathBuf,
    /// Output trace file.
    #[arg(long)]
    trace_out: PathBuf,
    /// Also extract the blocking set of the run to this file.
    #[arg(long)]
    blocking_out: Option<PathBuf>,
    /// Refuse exact builds when C(m, <=f) exceeds this.
    #[arg(long, default_value_t = DEFAULT_EXACT_BUDGET)]
    exact_budget: u128,
    /// Ignore safety budgets.
    #[arg(long)]
    force: bool,
}

#[derive(Args)]
struct VerifyOpts {
    /// Base graph file.
    #[arg(long)]
    input: PathBuf,
    /// Candidate spanner file.
    #[arg(long)]
    spanner: PathBuf,
    #[arg(long)]
    f: usize,
    #[arg(long)]
    k: usize,
    #[arg(long, value_enum, default_value = "exhaustive")]
    mode: ModeOpt,
    /// Fault sets to draw in sampled mode.
    #[arg(long, default_value_t = 1000)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Refuse exhaustive runs when C(m, <=f) * n^2 exceeds this.
    #[arg(long, default_value_t = DEFAULT_VERIFY_BUDGET)]
    verify_budget: u128,
    /// Ignore safety budgets.
    #[arg(long)]
    force: bool,
}

#[derive(Args)]
struct SweepOpts {
    /// Node counts, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    n: Vec<usize>,
    /// Fault budgets, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    f: Vec<usize>,
    /// Stretch parameters, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    k: Vec<usize>,
    #[arg(long, value_enum, default_value = "both")]
    alg: AlgChoice,
    /// Graphs per cell.
    #[arg(long, default_value_t = 1)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Edges per node in the generated graphs.
    #[arg(long, default_value_t = 3)]
    density: usize,
    /// `unit` or `uniform:LO:HI`.
    #[arg(long, default_value = "unit", value_parser = parse_weights)]
    weights: WeightMode,
    /// Output CSV file.
    #[arg(long)]
    out: PathBuf,
    #[arg(long, default_value_t = DEFAULT_EXACT_BUDGET)]
    exact_budget: u128,
    /// Ignore safety budgets.
    #[arg(long)]
    force: bool,
}

#[derive(Args)]
struct CensusOpts {
    /// Host graph file.
    #[arg(long)]
    input: PathBuf,
    /// Blocking set file (edge id pairs in the host graph).
    #[arg(long)]
    blocking: PathBuf,
    /// Maximum path length to enumerate.
    #[arg(long)]
    k: usize,
    /// Block-frequency cap assumed by choke sets and dispersion.
    #[arg(long)]
    f: usize,
    /// Run the block-frequency reduction with this parameter first.
    #[arg(long)]
    reduce: Option<usize>,
    /// Dispersion harness constant.
    #[arg(long, default_value_t = 8.0)]
    c: f64,
    /// Output CSV file.
    #[arg(long)]
    out: PathBuf,
    /// Ignore enumeration size limits.
    #[arg(long)]
    force: bool,
}

fn parse_weights(s: &str) -> Result<WeightMode, String> {
    if s == "unit" {
        return Ok(WeightMode::Unit);
    }
    if let Some(rest) = s.strip_prefix("uniform:") {
        let parts: Vec<&str> = rest.split(':').collect();
        if parts.len() == 2 {
            let lo: f64 = parts[0].parse().map_err(|_| "bad lower bound")?;
            let hi: f64 = parts[1].parse().map_err(|_| "bad upper bound")?;
            return Ok(WeightMode::Uniform { lo, hi });
        }
    }
    Err(format!(
        "unrecognized weight mode `{s}`; use unit or uniform:LO:HI"
    ))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Build(opts) => build(opts),
        Command::Verify(opts) => verify(opts),
        Command::Sweep(opts) => sweep(opts),
        Command::Census(opts) => census(opts),
    };
    ExitCode::from(code as u8)
}

fn build(opts: BuildOpts) -> i32 {
    let req = BuildRequest {
        input: &opts.input,
        f: opts.f,
        k: opts.k,
        algorithm: opts.alg.into(),
        spanner_out: &opts.out,
        trace_out: &opts.trace_out,
        blocking_out: opts.blocking_out.as_deref(),
        exact_budget: if opts.force {
            u128::MAX
        } else {
            opts.exact_budget
        },
    };
    match run_build(&req) {
        Ok(outcome) => {
            println!("edges={}", outcome.edges);
            exit::OK
        }
        Err(e) => {
            eprintln!("error: {e}");
            error_exit_code(&e)
        }
    }
}

fn verify(opts: VerifyOpts) -> i32 {
    let mode = match opts.mode {
        ModeOpt::Exhaustive => VerifyMode::Exhaustive,
        ModeOpt::Sampled => VerifyMode::Sampled {
            trials: opts.trials,
            seed: opts.seed,
        },
    };
    let req = VerifyRequest {
        graph: &opts.input,
        spanner: &opts.spanner,
        f: opts.f,
        k: opts.k,
        mode,
        budget: if opts.force {
            u128::MAX
        } else {
            opts.verify_budget
        },
    };
    match run_verify(&req) {
        Ok(VerifyOutcome::Ok) => {
            println!("OK");
            exit::OK
        }
        Ok(VerifyOutcome::Violation(v)) => {
            println!("{v}");
            exit::VERIFICATION_FAILURE
        }
        Err(e) => {
            eprintln!("error: {e}");
            error_exit_code(&e)
        }
    }
}

fn sweep(opts: SweepOpts) -> i32 {
    let algorithms = match opts.alg {
        AlgChoice::Exact => vec![Algorithm::Exact],
        AlgChoice::Approx => vec![Algorithm::Approximate],
        AlgChoice::Both => vec![Algorithm::Exact, Algorithm::Approximate],
    };
    let cfg = SweepConfig {
        n_values: opts.n,
        f_values: opts.f,
        k_values: opts.k,
        algorithms,
        trials: opts.trials,
        seed: opts.seed,
        density: opts.density,
        weights: opts.weights,
        exact_budget: if opts.force {
            u128::MAX
        } else {
            opts.exact_budget
        },
    };
    match run_sweep(&cfg) {
        Ok(rows) => {
            if let Err(e) = std::fs::write(&opts.out, to_csv(&rows)) {
                eprintln!("error: {e}");
                return exit::INPUT_ERROR;
            }
            println!("cells={}", rows.len());
            exit::OK
        }
        Err(e) => {
            eprintln!("error: {e}");
            error_exit_code(&e)
        }
    }
}

fn census(opts: CensusOpts) -> i32 {
    let req = CensusRequest {
        graph: &opts.input,
        blocking: &opts.blocking,
        k: opts.k,
        f: opts.f,
        reduce: opts.reduce,
        dispersion_constant: opts.c,
        csv_out: &opts.out,
        force: opts.force,
    };
    match run_census(&req) {
        Ok(outcome) => {
            println!("rows={}", outcome.rows);
            println!(
                "max_choke={} choke_bound={}",
                outcome.max_choke, outcome.choke_bound
            );
            println!(
                "dispersion_max_ratio={:.6} empirical_c={:.6}",
                outcome.dispersion.max_ratio, outcome.dispersion.empirical_constant
            );
            if outcome.dispersion.ok {
                println!("dispersion=ok");
                exit::OK
            } else {
                println!("dispersion=violated");
                exit::VERIFICATION_FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            error_exit_code(&e)
        }
    }
}
