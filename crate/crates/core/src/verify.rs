//! Ground-truth oracle: certify or refute that a subgraph is an
//! f-edge-fault-tolerant (2k-1)-spanner.

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::ext::Dist;
use crate::graph::{EdgeId, FaultSet, NodeId, WeightedGraph};
use crate::search::weighted_distances_from;

/// Verification strategy: check every fault set of size at most f, or a
/// seeded random sample of them.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerifyMode {
    Exhaustive,
    Sampled { trials: usize, seed: u64 },
}

/// A concrete refutation: under faults `faults`, the spanner distance
/// exceeds the stretched base distance for the pair (u, v).
#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub faults: FaultSet,
    pub u: NodeId,
    pub v: NodeId,
    pub d_spanner: Dist,
    pub d_base: Dist,
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "FAULTS={} PAIR={},{} DH={} DG={}",
            self.faults, self.u, self.v, self.d_spanner, self.d_base
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum VerifyOutcome {
    Ok,
    Violation(Violation),
}

impl VerifyOutcome {
    pub fn is_ok(&self) -> bool {
        matches!(self, VerifyOutcome::Ok)
    }
}

/// Default ceiling on `C(m, <=f) * n^2` for exhaustive verification.
pub const DEFAULT_VERIFY_BUDGET: u128 = 100_000_000;

/// Checks Definition-style fault tolerance: for every fault set F over the
/// base graph's edges with |F| <= f and every node pair, the spanner minus F
/// must approximate base-graph distances within stretch 2k-1. Both sides
/// disconnected counts as satisfied.
pub fn verify_eft(
    g: &WeightedGraph,
    h: &WeightedGraph,
    f: usize,
    k: usize,
    mode: VerifyMode,
) -> Result<VerifyOutcome> {
    verify_eft_with_budget(g, h, f, k, mode, DEFAULT_VERIFY_BUDGET)
}

/// As [`verify_eft`], with an explicit exhaustive-mode budget.
/// Pass `u128::MAX` to bypass the refusal.
pub fn verify_eft_with_budget(
    g: &WeightedGraph,
    h: &WeightedGraph,
    f: usize,
    k: usize,
    mode: VerifyMode,
    budget: u128,
) -> Result<VerifyOutcome> {
    if k == 0 {
        return Err(Error::Precondition("k must be positive".into()));
    }
    let h_to_g = h.embed_into(g)?;
    // g edge id -> h edge id, for translating fault sets
    let mut g_to_h: Vec<Option<EdgeId>> = vec![None; g.edge_count()];
    for (h_id, &g_id) in h_to_g.iter().enumerate() {
        g_to_h[g_id] = Some(h_id);
    }
    let stretch = (2 * k - 1) as f64;

    match mode {
        VerifyMode::Exhaustive => {
            let cost = fault_set_count(g.edge_count(), f)
                .saturating_mul((g.node_count() as u128).saturating_pow(2));
            if cost > budget {
                return Err(Error::BudgetExceeded { cost, budget });
            }
            for size in 0..=f.min(g.edge_count()) {
                for combo in (0..g.edge_count()).combinations(size) {
                    let faults = FaultSet::from_edges(combo);
                    if let Some(v) = check_fault_set(g, h, &g_to_h, stretch, &faults) {
                        return Ok(VerifyOutcome::Violation(v));
                    }
                }
            }
            Ok(VerifyOutcome::Ok)
        }
        VerifyMode::Sampled { trials, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            // draw uniformly over all fault sets of size <= f
            let sizes: Vec<u128> = (0..=f.min(g.edge_count()))
                .map(|s| binomial(g.edge_count(), s))
                .collect();
            let total: u128 = sizes.iter().sum();
            for _ in 0..trials {
                let mut pick = rng.random_range(0..total);
                let mut size = 0;
                for (s, &count) in sizes.iter().enumerate() {
                    if pick < count {
                        size = s;
                        break;
                    }
                    pick -= count;
                }
                let idx = rand::seq::index::sample(&mut rng, g.edge_count(), size);
                let faults = FaultSet::from_edges(idx.iter());
                if let Some(v) = check_fault_set(g, h, &g_to_h, stretch, &faults) {
                    return Ok(VerifyOutcome::Violation(v));
                }
            }
            Ok(VerifyOutcome::Ok)
        }
    }
}

fn check_fault_set(
    g: &WeightedGraph,
    h: &WeightedGraph,
    g_to_h: &[Option<EdgeId>],
    stretch: f64,
    faults: &FaultSet,
) -> Option<Violation> {
    let faults_h: FaultSet = faults.iter().filter_map(|e| g_to_h[e]).collect();
    for u in 0..g.node_count() {
        let dg = weighted_distances_from(g, u, faults);
        let dh = weighted_distances_from(h, u, &faults_h);
        for v in 0..g.node_count() {
            // infinite base distance makes the requirement vacuous
            if dh[v] > dg[v].scale(stretch) {
                return Some(Violation {
                    faults: faults.clone(),
                    u,
                    v,
                    d_spanner: dh[v],
                    d_base: dg[v],
                });
            }
        }
    }
    None
}

/// Number of fault sets of size at most f over m edges, saturating.
pub fn fault_set_count(m: usize, f: usize) -> u128 {
    (0..=f.min(m)).fold(0u128, |acc, s| acc.saturating_add(binomial(m, s)))
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut result: u128 = 1;
    for i in 0..k {
        result = result.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::weighted_distance;

    fn cycle_graph(n: usize) -> WeightedGraph {
        WeightedGraph::new(n, (0..n).map(|i| (i, (i + 1) % n, 1.0))).unwrap()
    }

    #[test]
    fn identity_spanner_always_verifies() {
        let g = cycle_graph(5);
        for f in 0..3 {
            for k in 1..4 {
                let out = verify_eft(&g, &g, f, k, VerifyMode::Exhaustive).unwrap();
                assert!(out.is_ok());
            }
        }
    }

    #[test]
    fn c5_minus_edge_fails_at_stretch_three() {
        let g = cycle_graph(5);
        let edges: Vec<_> = (0..4).collect();
        let (h, _) = g.subgraph(&edges).unwrap();
        match verify_eft(&g, &h, 0, 2, VerifyMode::Exhaustive).unwrap() {
            VerifyOutcome::Violation(v) => {
                assert!(v.faults.is_empty());
                // replay the witness
                let dh = weighted_distance(&h, v.u, v.v, &v.faults).unwrap();
                let dg = weighted_distance(&g, v.u, v.v, &v.faults).unwrap();
                assert_eq!(dh, v.d_spanner);
                assert_eq!(dg, v.d_base);
                assert!(dh > dg.scale(3.0));
            }
            VerifyOutcome::Ok => panic!("detour of weight 4 exceeds stretch 3"),
        }
    }

    #[test]
    fn disconnection_on_both_sides_is_vacuous() {
        // forest: faulting a bridge disconnects base and spanner alike, and
        // an infinite base distance imposes no requirement
        let g = WeightedGraph::new(4, vec![(0, 1, 1.0), (2, 3, 1.0)]).unwrap();
        for f in 0..3 {
            let out = verify_eft(&g, &g, f, 2, VerifyMode::Exhaustive).unwrap();
            assert!(out.is_ok());
        }
    }

    #[test]
    fn non_subgraph_rejected() {
        let g = cycle_graph(4);
        let h = WeightedGraph::new(4, vec![(0, 2, 1.0)]).unwrap();
        assert!(verify_eft(&g, &h, 0, 2, VerifyMode::Exhaustive).is_err());
    }

    #[test]
    fn budget_refusal() {
        let g = cycle_graph(6);
        let err = verify_eft_with_budget(&g, &g, 2, 2, VerifyMode::Exhaustive, 10);
        assert!(matches!(err, Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn sampled_mode_is_seed_deterministic() {
        let g = cycle_graph(5);
        let edges: Vec<_> = (0..4).collect();
        let (h, _) = g.subgraph(&edges).unwrap();
        let mode = VerifyMode::Sampled {
            trials: 20,
            seed: 42,
        };
        let a = verify_eft(&g, &h, 1, 2, mode).unwrap();
        let b = verify_eft(&g, &h, 1, 2, mode).unwrap();
        assert_eq!(format!("{a:?}"), format!("{b:?}"));
    }

    #[test]
    fn violation_line_format() {
        let v = Violation {
            faults: FaultSet::from_edges([3, 1]),
            u: 0,
            v: 4,
            d_spanner: Dist::Infinite,
            d_base: Dist::Finite(2.0),
        };
        assert_eq!(v.to_string(), "FAULTS=1,3 PAIR=0,4 DH=inf DG=2");
    }

    #[test]
    fn binomial_sums() {
        assert_eq!(binomial(20, 2), 190);
        assert_eq!(fault_set_count(20, 2), 1 + 20 + 190);
    }
}
