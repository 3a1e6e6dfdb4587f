//! Input families: seeded random graphs, random regular graphs, and the
//! node-copying blow-up of bipartite base graphs.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{NodeId, WeightedGraph};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WeightMode {
    Unit,
    Uniform { lo: f64, hi: f64 },
}

/// Uniform random simple graph with exactly `m` edges.
pub fn gen_random(n: usize, m: usize, mode: WeightMode, seed: u64) -> Result<WeightedGraph> {
    let total = n * n.saturating_sub(1) / 2;
    if m > total {
        return Err(Error::Infeasible(format!(
            "{m} edges requested but only {total} node pairs exist"
        )));
    }
    if let WeightMode::Uniform { lo, hi } = mode {
        if !(lo.is_finite() && hi.is_finite() && 0.0 <= lo && lo < hi) {
            return Err(Error::Infeasible(format!(
                "bad uniform weight range [{lo}, {hi})"
            )));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let picked = rand::seq::index::sample(&mut rng, total, m);
    let mut pairs: Vec<(NodeId, NodeId)> = picked.iter().map(|idx| decode_pair(n, idx)).collect();
    pairs.sort_unstable();
    let edges: Vec<(NodeId, NodeId, f64)> = pairs
        .into_iter()
        .map(|(u, v)| {
            let w = match mode {
                WeightMode::Unit => 1.0,
                WeightMode::Uniform { lo, hi } => rng.random_range(lo..hi),
            };
            (u, v, w)
        })
        .collect();
    WeightedGraph::new(n, edges)
}

/// Maps a flat index in `0..C(n,2)` to the corresponding unordered pair,
/// row by row: (0,1), (0,2), ..., (0,n-1), (1,2), ...
fn decode_pair(n: usize, mut idx: usize) -> (NodeId, NodeId) {
    for u in 0..n {
        let row = n - 1 - u;
        if idx < row {
            return (u, u + 1 + idx);
        }
        idx -= row;
    }
    unreachable!("index out of range")
}

/// Random simple `r`-regular graph via the pairing model with rejection.
/// Unit weights.
pub fn gen_regular(n: usize, r: usize, seed: u64) -> Result<WeightedGraph> {
    if r >= n || !(n * r).is_multiple_of(2) {
        return Err(Error::Infeasible(format!(
            "no simple {r}-regular graph on {n} nodes"
        )));
    }
    if r == 0 {
        return WeightedGraph::new(n, Vec::new());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut stubs: Vec<NodeId> = (0..n).flat_map(|v| std::iter::repeat_n(v, r)).collect();
    const MAX_ATTEMPTS: usize = 100_000;
    'attempt: for _ in 0..MAX_ATTEMPTS {
        stubs.shuffle(&mut rng);
        let mut seen = BTreeSet::new();
        for pair in stubs.chunks(2) {
            let (u, v) = (pair[0], pair[1]);
            if u == v || !seen.insert((u.min(v), u.max(v))) {
                continue 'attempt;
            }
        }
        let edges: Vec<(NodeId, NodeId, f64)> =
            seen.into_iter().map(|(u, v)| (u, v, 1.0)).collect();
        return WeightedGraph::new(n, edges);
    }
    Err(Error::Infeasible(format!(
        "pairing model failed to produce a simple {r}-regular graph on {n} nodes"
    )))
}

/// A graph with a declared bipartition: nodes `0..left_count` form the left
/// side, the rest the right side. Every edge must cross sides.
#[derive(Debug, Clone)]
pub struct BipartiteGraph {
    pub graph: WeightedGraph,
    pub left_count: usize,
}

impl BipartiteGraph {
    pub fn new(graph: WeightedGraph, left_count: usize) -> Result<Self> {
        if left_count > graph.node_count() {
            return Err(Error::Infeasible(format!(
                "left side has {left_count} nodes but graph has {}",
                graph.node_count()
            )));
        }
        for e in graph.edges() {
            let (a, b) = e.key_pair();
            if (a < left_count) == (b < left_count) {
                return Err(Error::NotBipartite { u: a, v: b });
            }
        }
        Ok(BipartiteGraph { graph, left_count })
    }

    pub fn right_count(&self) -> usize {
        self.graph.node_count() - self.left_count
    }
}

/// Node-copying blow-up: each left node becomes `copies_left` copies, each
/// right node `copies_right` copies, and each edge (u, v) becomes all
/// `copies_left * copies_right` edges between the copies of its endpoints.
pub fn blow_up(
    base: &BipartiteGraph,
    copies_left: usize,
    copies_right: usize,
) -> Result<BipartiteGraph> {
    if copies_left == 0 || copies_right == 0 {
        return Err(Error::Infeasible(
            "copy multiplicities must be positive".into(),
        ));
    }
    let left = base.left_count;
    let right = base.right_count();
    let new_left = left * copies_left;
    let new_n = new_left + right * copies_right;
    let left_id = |u: NodeId, i: usize| u * copies_left + i;
    let right_id = |v: NodeId, j: usize| new_left + (v - left) * copies_right + j;
    let mut edges = Vec::with_capacity(base.graph.edge_count() * copies_left * copies_right);
    for e in base.graph.edges() {
        let (a, b) = e.key_pair();
        // a is on the left by the bipartition invariant
        for i in 0..copies_left {
            for j in 0..copies_right {
                edges.push((left_id(a, i), right_id(b, j), e.w));
            }
        }
    }
    BipartiteGraph::new(WeightedGraph::new(new_n, edges)?, new_left)
}

/// The Petersen graph: 3-regular, 10 nodes, girth 5. Unit weights.
pub fn petersen() -> WeightedGraph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5, 1.0)); // outer cycle
        edges.push((i, i + 5, 1.0)); // spokes
        edges.push((5 + i, 5 + (i + 2) % 5, 1.0)); // inner pentagram
    }
    WeightedGraph::new(10, edges).expect("fixed edge list is valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cycles::girth;
    use crate::ext::Ext;

    #[test]
    fn forced_complete_graph() {
        let g = gen_random(5, 10, WeightMode::Unit, 1).unwrap();
        assert_eq!(g.edge_count(), 10);
        for u in 0..5 {
            assert_eq!(g.degree(u), 4);
        }
    }

    #[test]
    fn edgeless_graph() {
        let g = gen_random(10, 0, WeightMode::Unit, 1).unwrap();
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn random_graph_is_seed_deterministic() {
        let a = gen_random(20, 50, WeightMode::Uniform { lo: 0.0, hi: 1.0 }, 7).unwrap();
        let b = gen_random(20, 50, WeightMode::Uniform { lo: 0.0, hi: 1.0 }, 7).unwrap();
        assert_eq!(a.edge_count(), b.edge_count());
        for e in 0..a.edge_count() {
            assert_eq!(a.edge(e).key_pair(), b.edge(e).key_pair());
            assert_eq!(a.edge(e).w, b.edge(e).w);
        }
        let c = gen_random(20, 50, WeightMode::Uniform { lo: 0.0, hi: 1.0 }, 8).unwrap();
        let differs = (0..50).any(|e| a.edge(e).key_pair() != c.edge(e).key_pair());
        assert!(differs);
    }

    #[test]
    fn infeasible_edge_count_rejected() {
        assert!(gen_random(4, 7, WeightMode::Unit, 0).is_err());
    }

    #[test]
    fn decode_pair_covers_all_pairs() {
        let n = 7;
        let total = n * (n - 1) / 2;
        let mut seen = BTreeSet::new();
        for idx in 0..total {
            let (u, v) = decode_pair(n, idx);
            assert!(u < v && v < n);
            assert!(seen.insert((u, v)));
        }
        assert_eq!(seen.len(), total);
    }

    #[test]
    fn regular_graph_degrees() {
        for seed in 0..5 {
            let g = gen_regular(10, 3, seed).unwrap();
            assert_eq!(g.edge_count(), 15);
            for v in 0..10 {
                assert_eq!(g.degree(v), 3);
            }
        }
    }

    #[test]
    fn forced_k4() {
        let g = gen_regular(4, 3, 11).unwrap();
        assert_eq!(g.edge_count(), 6);
        for v in 0..4 {
            assert_eq!(g.degree(v), 3);
        }
    }

    #[test]
    fn infeasible_regular_rejected() {
        assert!(gen_regular(5, 3, 0).is_err()); // odd sum of degrees
        assert!(gen_regular(4, 4, 0).is_err()); // r >= n
    }

    #[test]
    fn bipartite_validation() {
        let g = WeightedGraph::new(4, vec![(0, 1, 1.0)]).unwrap();
        assert!(BipartiteGraph::new(g, 2).is_err());
        let g = WeightedGraph::new(4, vec![(0, 2, 1.0), (1, 3, 1.0)]).unwrap();
        assert!(BipartiteGraph::new(g.clone(), 2).is_ok());
        assert!(BipartiteGraph::new(g.clone(), 5).is_err());
        let sides = BipartiteGraph::new(g, 2).unwrap();
        assert!(blow_up(&sides, 0, 2).is_err());
    }

    #[test]
    fn blow_up_identity() {
        let base = bipartite_c6();
        let b = blow_up(&base, 1, 1).unwrap();
        assert_eq!(b.graph.node_count(), 6);
        assert_eq!(b.graph.edge_count(), 6);
        assert_eq!(girth(&b.graph), Ext::Finite(6));
    }

    #[test]
    fn blow_up_single_edge_gives_complete_bipartite() {
        let g = WeightedGraph::new(2, vec![(0, 1, 1.0)]).unwrap();
        let base = BipartiteGraph::new(g, 1).unwrap();
        let b = blow_up(&base, 2, 3).unwrap();
        assert_eq!(b.graph.node_count(), 5);
        assert_eq!(b.graph.edge_count(), 6);
        assert_eq!(b.left_count, 2);
        for u in 0..2 {
            assert_eq!(b.graph.degree(u), 3);
        }
        for v in 2..5 {
            assert_eq!(b.graph.degree(v), 2);
        }
    }

    #[test]
    fn blow_up_counts() {
        let base = bipartite_c6();
        let b = blow_up(&base, 2, 3).unwrap();
        assert_eq!(b.graph.node_count(), 3 * 2 + 3 * 3);
        assert_eq!(b.graph.edge_count(), 6 * 2 * 3);
    }

    #[test]
    fn blow_up_cycle_projection() {
        // A cycle in the blow-up that uses exactly one image of some base
        // edge projects to a base cycle of at most the same length, so it
        // cannot be shorter than the base girth.
        let base = bipartite_c6();
        let b = blow_up(&base, 1, 2).unwrap();
        let base_girth = match girth(&base.graph) {
            Ext::Finite(g) => g,
            Ext::Infinite => unreachable!(),
        };
        let cycles = crate::cycles::enumerate_cycles(&b.graph, 8);
        assert!(!cycles.is_empty());
        for cycle in cycles {
            // count images per original edge (images of base edge (a, x) share
            // the same left endpoint a and copies of right endpoint x)
            let mut image_counts = std::collections::BTreeMap::new();
            for &e in &cycle {
                let (a, bb) = b.graph.edge(e).key_pair();
                let orig_right = 3 + (bb - 3) / 2;
                *image_counts.entry((a, orig_right)).or_insert(0usize) += 1;
            }
            if image_counts.values().any(|&c| c == 1) {
                assert!(cycle.len() >= base_girth);
            }
        }
    }

    /// C6 relabeled so the bipartition is contiguous: left {0,1,2},
    /// right {3,4,5}, edges 0-3, 3-1, 1-4, 4-2, 2-5, 5-0.
    fn bipartite_c6() -> BipartiteGraph {
        let g = WeightedGraph::new(
            6,
            vec![
                (0, 3, 1.0),
                (3, 1, 1.0),
                (1, 4, 1.0),
                (4, 2, 1.0),
                (2, 5, 1.0),
                (5, 0, 1.0),
            ],
        )
        .unwrap();
        BipartiteGraph::new(g, 3).unwrap()
    }
}
