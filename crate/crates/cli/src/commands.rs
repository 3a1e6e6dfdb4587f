//! Drivers behind the build / verify / census subcommands.

use std::fs;
use std::path::Path;

use eftspan_core::blocking::extract_blocking_set;
use eftspan_core::blocking::reduce_block_frequency;
use eftspan_core::census::{
    build_choke_set, check_dispersion, count_paths, CensusFilter, DispersionReport,
};
use eftspan_core::error::{Error, Result};
use eftspan_core::fileio;
use eftspan_core::greedy::{ft_greedy_approx, ft_greedy_exact, Algorithm};
use eftspan_core::verify::{fault_set_count, verify_eft_with_budget, VerifyMode, VerifyOutcome};

/// Default ceiling on C(m, <=f) before an exact build is refused.
pub const DEFAULT_EXACT_BUDGET: u128 = 10_000_000;

pub struct BuildRequest<'a> {
    pub input: &'a Path,
    pub f: usize,
    pub k: usize,
    pub algorithm: Algorithm,
    pub spanner_out: &'a Path,
    pub trace_out: &'a Path,
    pub blocking_out: Option<&'a Path>,
    pub exact_budget: u128,
}

pub struct BuildOutcome {
    pub edges: usize,
}

pub fn run_build(req: &BuildRequest) -> Result<BuildOutcome> {
    let text = fs::read_to_string(req.input)?;
    let parsed = fileio::parse_graph(&text)?;
    let g = parsed.graph;
    if req.algorithm == Algorithm::Exact {
        let cost = fault_set_count(g.edge_count(), req.f);
        if cost > req.exact_budget {
            return Err(Error::BudgetExceeded {
                cost,
                budget: req.exact_budget,
            });
        }
    }
    let result = match req.algorithm {
        Algorithm::Exact => ft_greedy_exact(&g, req.f, req.k)?,
        Algorithm::Approximate => ft_greedy_approx(&g, req.f, req.k)?,
    };
    fs::write(req.spanner_out, fileio::write_graph(&result.spanner, None))?;
    fs::write(req.trace_out, fileio::write_trace(&result))?;
    if let Some(path) = req.blocking_out {
        let blocks = extract_blocking_set(&result)?;
        fs::write(path, fileio::write_blocking(&blocks))?;
    }
    Ok(BuildOutcome {
        edges: result.spanner.edge_count(),
    })
}

pub struct VerifyRequest<'a> {
    pub graph: &'a Path,
    pub spanner: &'a Path,
    pub f: usize,
    pub k: usize,
    pub mode: VerifyMode,
    pub budget: u128,
}

pub fn run_verify(req: &VerifyRequest) -> Result<VerifyOutcome> {
    let g = fileio::parse_graph(&fs::read_to_string(req.graph)?)?.graph;
    let h = fileio::parse_graph(&fs::read_to_string(req.spanner)?)?.graph;
    verify_eft_with_budget(&g, &h, req.f, req.k, req.mode, req.budget)
}

pub struct CensusRequest<'a> {
    pub graph: &'a Path,
    pub blocking: &'a Path,
    pub k: usize,
    /// Block-frequency cap assumed by choke sets and the dispersion bound.
    pub f: usize,
    /// Run the block-frequency reduction with this parameter first.
    pub reduce: Option<usize>,
    pub dispersion_constant: f64,
    pub csv_out: &'a Path,
    pub force: bool,
}

pub struct CensusOutcome {
    pub rows: usize,
    pub max_choke: usize,
    pub choke_bound: usize,
    pub dispersion: DispersionReport,
}

pub fn run_census(req: &CensusRequest) -> Result<CensusOutcome> {
    let host = fileio::parse_graph(&fs::read_to_string(req.graph)?)?.graph;
    let blocks = fileio::parse_blocking(&fs::read_to_string(req.blocking)?, &host)?;
    let (h, b) = match req.reduce {
        Some(rf) => reduce_block_frequency(&host, &blocks, rf)?,
        None => (host, blocks),
    };
    let report = count_paths(&h, &b, req.k, CensusFilter::All, req.force)?;
    let mut max_choke = 0usize;
    for s in 0..h.node_count() {
        for t in 0..h.node_count() {
            if s == t {
                continue;
            }
            let cs = build_choke_set(&h, &b, s, t, req.k, req.f)?;
            max_choke = max_choke.max(cs.len());
        }
    }
    let dispersion = check_dispersion(&h, &b, req.k, req.f, req.dispersion_constant, req.force)?;
    fs::write(req.csv_out, report.to_csv())?;
    Ok(CensusOutcome {
        rows: report.rows.len(),
        max_choke,
        choke_bound: req.k * req.f + 1,
        dispersion,
    })
}
