//! Greedy construction of f-edge-fault-tolerant (2k-1)-spanners.
//!
//! Both variants scan the edges in canonical (nondecreasing weight) order and
//! keep an edge exactly when some bounded fault set still separates its
//! endpoints in the partial spanner. The fault set that triggered each
//! inclusion is recorded; those forcing sets are the raw material for strong
//! blocking sets.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::fault::{approx_fault_decision, exact_fault_decision, Decision};
use crate::graph::{EdgeId, FaultSet, WeightedGraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algorithm {
    Exact,
    Approximate,
}

impl std::fmt::Display for Algorithm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Algorithm::Exact => write!(f, "exact"),
            Algorithm::Approximate => write!(f, "approx"),
        }
    }
}

/// Per-run record of which edges were kept and which fault set forced each
/// of them. All edge ids refer to the *input* graph.
#[derive(Debug, Clone, Default)]
pub struct GreedyTrace {
    /// Kept edges in consideration order (ascending input edge id).
    pub kept: Vec<EdgeId>,
    /// For every kept edge, the fault set that forced it (possibly empty).
    pub forcing: BTreeMap<EdgeId, FaultSet>,
}

/// A constructed spanner together with the trace and parameters of its run.
#[derive(Debug, Clone)]
pub struct SpannerResult {
    /// The spanner as a graph in its own right (same node set as the input;
    /// edge ids are dense and inherit the input's canonical order).
    pub spanner: WeightedGraph,
    pub trace: GreedyTrace,
    pub f: usize,
    pub k: usize,
    pub algorithm: Algorithm,
}

impl SpannerResult {
    pub fn stretch(&self) -> usize {
        2 * self.k - 1
    }

    /// Input edge id of the spanner edge `e`.
    pub fn input_id(&self, e: EdgeId) -> EdgeId {
        self.trace.kept[e]
    }

    /// Spanner edge id of the input edge `input`, if it was kept.
    pub fn spanner_id(&self, input: EdgeId) -> Option<EdgeId> {
        self.trace.kept.binary_search(&input).ok()
    }
}

/// Exact greedy: keeps (u, v) iff some fault set of at most `f` edges makes
/// the endpoints farther apart than `(2k-1) * w(u, v)` in the partial
/// spanner. Output is an f-EFT (2k-1)-spanner.
pub fn ft_greedy_exact(g: &WeightedGraph, f: usize, k: usize) -> Result<SpannerResult> {
    run(g, f, k, Algorithm::Exact)
}

/// Polynomial-time greedy: the decision is the covering approximation on the
/// unweighted view of the partial spanner. Output is still an f-EFT
/// (2k-1)-spanner; forcing sets have size at most (2k-1)f.
pub fn ft_greedy_approx(g: &WeightedGraph, f: usize, k: usize) -> Result<SpannerResult> {
    run(g, f, k, Algorithm::Approximate)
}

fn run(g: &WeightedGraph, f: usize, k: usize, algorithm: Algorithm) -> Result<SpannerResult> {
    if k == 0 {
        return Err(Error::Precondition("k must be positive".into()));
    }
    let stretch = (2 * k - 1) as f64;
    let mut kept: Vec<EdgeId> = Vec::new();
    let mut forcing: BTreeMap<EdgeId, FaultSet> = BTreeMap::new();
    for id in 0..g.edge_count() {
        let e = g.edge(id);
        let (partial, _) = g.subgraph(&kept)?;
        let decision = match algorithm {
            Algorithm::Exact => exact_fault_decision(&partial, e.u, e.v, f, stretch * e.w)?,
            Algorithm::Approximate => approx_fault_decision(&partial, e.u, e.v, f, k)?,
        };
        if let Decision::Yes(witness) = decision {
            // translate partial-spanner ids back to input ids
            let forced: FaultSet = witness.iter().map(|j| kept[j]).collect();
            forcing.insert(id, forced);
            kept.push(id);
        }
    }
    let (spanner, _) = g.subgraph(&kept)?;
    Ok(SpannerResult {
        spanner,
        trace: GreedyTrace { kept, forcing },
        f,
        k,
        algorithm,
    })
}
