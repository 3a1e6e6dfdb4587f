//! Parameter sweeps: build spanners over a grid of (n, f, k, algorithm)
//! cells and compare measured sizes against the reference size bound.

use std::fmt::Write as _;

use rayon::prelude::*;

use eftspan_core::error::{Error, Result};
use eftspan_core::generators::{gen_random, WeightMode};
use eftspan_core::greedy::{ft_greedy_approx, ft_greedy_exact, Algorithm};
use eftspan_core::verify::fault_set_count;

/// Reference spanner-size bound with constant 1:
/// `k^2 f^(1/2 - 1/(2k)) n^(1+1/k) + k f n` for odd k and
/// `k^2 f^(1/2) n^(1+1/k) + k f n` for even k. For f = 0 the leading
/// power-of-f factor degenerates to 1 so the bound stays meaningful.
pub fn size_bound(n: usize, f: usize, k: usize) -> f64 {
    let nf = n as f64;
    let kf = k as f64;
    let exponent = if k % 2 == 1 {
        0.5 - 1.0 / (2.0 * kf)
    } else {
        0.5
    };
    let leading = (f.max(1) as f64).powf(exponent);
    kf * kf * leading * nf.powf(1.0 + 1.0 / kf) + kf * f as f64 * nf
}

#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub n_values: Vec<usize>,
    pub f_values: Vec<usize>,
    pub k_values: Vec<usize>,
    pub algorithms: Vec<Algorithm>,
    /// Instances per cell; each trial draws its own graph.
    pub trials: usize,
    pub seed: u64,
    /// Edge count is `density * n`, capped at the complete graph.
    pub density: usize,
    pub weights: WeightMode,
    /// Ceiling on C(m, <=f) for exact cells.
    pub exact_budget: u128,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub n: usize,
    pub f: usize,
    pub k: usize,
    pub algorithm: Algorithm,
    pub seed: u64,
    pub edges: usize,
    pub bound: f64,
    pub ratio: f64,
}

fn splitmix(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = x;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Per-instance graph seed. Depends only on (base seed, n, trial) so that
/// cells differing in f, k, or algorithm share the same input graph and
/// size comparisons across f are meaningful.
fn graph_seed(base: u64, n: usize, trial: usize) -> u64 {
    splitmix(base ^ splitmix((n as u64) << 20 | trial as u64))
}

/// Runs every cell of the grid (in a worker pool; each cell owns its seed)
/// and returns rows in deterministic grid order.
pub fn run_sweep(cfg: &SweepConfig) -> Result<Vec<SweepRow>> {
    let mut cells = Vec::new();
    for &n in &cfg.n_values {
        for &f in &cfg.f_values {
            for &k in &cfg.k_values {
                for &alg in &cfg.algorithms {
                    for trial in 0..cfg.trials {
                        cells.push((n, f, k, alg, trial));
                    }
                }
            }
        }
    }
    cells
        .par_iter()
        .map(|&(n, f, k, alg, trial)| run_cell(cfg, n, f, k, alg, trial))
        .collect()
}

fn run_cell(
    cfg: &SweepConfig,
    n: usize,
    f: usize,
    k: usize,
    alg: Algorithm,
    trial: usize,
) -> Result<SweepRow> {
    let m = (cfg.density * n).min(n * (n - 1) / 2);
    let seed = graph_seed(cfg.seed, n, trial);
    let g = gen_random(n, m, cfg.weights, seed)?;
    if alg == Algorithm::Exact {
        let cost = fault_set_count(m, f);
        if cost > cfg.exact_budget {
            return Err(Error::BudgetExceeded {
                cost,
                budget: cfg.exact_budget,
            });
        }
    }
    let result = match alg {
        Algorithm::Exact => ft_greedy_exact(&g, f, k)?,
        Algorithm::Approximate => ft_greedy_approx(&g, f, k)?,
    };
    let edges = result.spanner.edge_count();
    let bound = size_bound(n, f, k);
    Ok(SweepRow {
        n,
        f,
        k,
        algorithm: alg,
        seed,
        edges,
        bound,
        ratio: edges as f64 / bound,
    })
}

/// CSV rendering with a schema version header.
pub fn to_csv(rows: &[SweepRow]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# eftspan-sweep-csv v1");
    let _ = writeln!(out, "n,f,k,algorithm,seed,edges,bound,ratio");
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{:.4},{:.6}",
            r.n, r.f, r.k, r.algorithm, r.seed, r.edges, r.bound, r.ratio
        );
    }
    out
}
