//! Fault-set decisions: can at most `f` edge failures make a node pair far
//! apart?
//!
//! The exact decision is an instance of the NP-hard length-bounded cut
//! problem and is solved by branch-and-bound over violating paths. The
//! approximate decision is an iterative path-covering procedure on the
//! unweighted view of the graph with a one-sided `(2k-1)`-factor guarantee.

use crate::error::{Error, Result};
use crate::ext::Ext;
use crate::graph::{EdgeId, FaultSet, NodeId, WeightedGraph};
use crate::search::{min_weight_path, shortest_hop_path};

/// Outcome of a fault decision. `Yes` carries a witness: for the exact
/// decision a fault set that realizes the separation, for the approximate
/// decision the covering set built by the procedure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decision {
    Yes(FaultSet),
    No,
}

impl Decision {
    pub fn is_yes(&self) -> bool {
        matches!(self, Decision::Yes(_))
    }
}

/// Exact decision: does some fault set `F` with `|F| <= f`, not containing
/// the direct edge (u, v), satisfy `d_{h \ F}(u, v) > threshold`?
///
/// Branch-and-bound: find a minimum-weight violating path (weight <=
/// threshold, fewest edges among minimum weight); if none exists the current
/// fault set is a witness, otherwise every qualifying fault set must hit this
/// path, so branch on which of its edges joins the set, to depth `f`.
pub fn exact_fault_decision(
    h: &WeightedGraph,
    u: NodeId,
    v: NodeId,
    f: usize,
    threshold: f64,
) -> Result<Decision> {
    if u == v {
        return Err(Error::IdenticalEndpoints);
    }
    h.check_node(u)?;
    h.check_node(v)?;
    if !(threshold.is_finite() && threshold >= 0.0) {
        return Err(Error::Precondition(format!(
            "threshold {threshold} must be finite and non-negative"
        )));
    }
    let direct = h.edge_between(u, v);
    let mut faults = FaultSet::new();
    Ok(match branch(h, u, v, threshold, direct, f, &mut faults) {
        Some(witness) => Decision::Yes(witness),
        None => Decision::No,
    })
}

fn branch(
    h: &WeightedGraph,
    u: NodeId,
    v: NodeId,
    threshold: f64,
    direct: Option<EdgeId>,
    budget: usize,
    faults: &mut FaultSet,
) -> Option<FaultSet> {
    let path = match min_weight_path(h, u, v, faults) {
        None => return Some(faults.clone()),
        Some(p) if p.weight > threshold => return Some(faults.clone()),
        Some(p) => p,
    };
    if budget == 0 {
        return None;
    }
    for e in path.edges {
        if Some(e) == direct {
            continue;
        }
        faults.insert(e);
        let found = branch(h, u, v, threshold, direct, budget - 1, faults);
        faults.remove(e);
        if found.is_some() {
            return found;
        }
    }
    None
}

/// Approximate decision on the unweighted view of `h`, as used by the
/// polynomial-time greedy. Repeatedly finds a shortest u-v path of at most
/// `2k-1` hops and adds all its edges (except the direct edge) to the cover,
/// for at most `f` iterations.
///
/// Guarantees: if some fault set of size <= f avoiding the direct edge cuts
/// all u-v paths of <= 2k-1 hops, the answer is `Yes`; and a `Yes` always
/// carries a cover of size <= (2k-1)f that cuts all such paths.
pub fn approx_fault_decision(
    h: &WeightedGraph,
    u: NodeId,
    v: NodeId,
    f: usize,
    k: usize,
) -> Result<Decision> {
    if u == v {
        return Err(Error::IdenticalEndpoints);
    }
    h.check_node(u)?;
    h.check_node(v)?;
    if k == 0 {
        return Err(Error::Precondition("k must be positive".into()));
    }
    let hop_limit = 2 * k - 1;
    let direct = h.edge_between(u, v);
    let mut cover = FaultSet::new();
    for _ in 0..f {
        match short_path(h, u, v, hop_limit, &cover) {
            None => return Ok(Decision::Yes(cover)),
            Some(path) => {
                let before = cover.len();
                for e in path {
                    if Some(e) != direct {
                        cover.insert(e);
                    }
                }
                if cover.len() == before {
                    // the direct edge alone is a path we may never cut
                    return Ok(Decision::No);
                }
            }
        }
    }
    Ok(match short_path(h, u, v, hop_limit, &cover) {
        None => Decision::Yes(cover),
        Some(_) => Decision::No,
    })
}

fn short_path(
    h: &WeightedGraph,
    u: NodeId,
    v: NodeId,
    hop_limit: usize,
    cover: &FaultSet,
) -> Option<Vec<EdgeId>> {
    shortest_hop_path(h, u, v, cover).filter(|p| p.len() <= hop_limit)
}

/// Test and oracle helper: the minimum size of a fault set (avoiding the
/// direct edge) that pushes the hop distance above `hop_limit`, found by
/// exhaustive enumeration up to `max_size`. `None` if no such set exists
/// within the size cap.
pub fn brute_force_min_hop_cut(
    h: &WeightedGraph,
    u: NodeId,
    v: NodeId,
    hop_limit: usize,
    max_size: usize,
) -> Option<usize> {
    use itertools::Itertools;
    let direct = h.edge_between(u, v);
    let candidates: Vec<EdgeId> = (0..h.edge_count()).filter(|&e| Some(e) != direct).collect();
    for size in 0..=max_size.min(candidates.len()) {
        for combo in candidates.iter().copied().combinations(size) {
            let faults = FaultSet::from_edges(combo);
            let d = crate::search::hop_distances_from(h, u, &faults)[v];
            if d > Ext::Finite(hop_limit) {
                return Some(size);
            }
        }
    }
    None
}
