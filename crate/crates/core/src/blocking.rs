//! Strong blocking sets: extraction from greedy traces, exhaustive
//! verification, and the block-frequency reduction.
//!
//! A strong t-blocking set is a set of edge pairs ("blocks") such that every
//! cycle of at most t edges contains some block one of whose edges is the
//! cycle's canonically-heaviest edge.

use std::collections::BTreeSet;

use crate::cycles::enumerate_cycles;
use crate::error::{Error, Result};
use crate::graph::{EdgeId, WeightedGraph};
use crate::greedy::SpannerResult;

/// An unordered pair of distinct edges, stored with the canonical-lesser
/// edge first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Block {
    lo: EdgeId,
    hi: EdgeId,
}

impl Block {
    pub fn new(e1: EdgeId, e2: EdgeId) -> Result<Block> {
        if e1 == e2 {
            return Err(Error::Precondition(
                "a block must pair two distinct edges".into(),
            ));
        }
        Ok(Block {
            lo: e1.min(e2),
            hi: e1.max(e2),
        })
    }

    pub fn lo(&self) -> EdgeId {
        self.lo
    }

    pub fn hi(&self) -> EdgeId {
        self.hi
    }

    pub fn contains(&self, e: EdgeId) -> bool {
        self.lo == e || self.hi == e
    }

    /// The partner of `e` in this block; panics if `e` is not a member.
    pub fn other(&self, e: EdgeId) -> EdgeId {
        if e == self.lo {
            self.hi
        } else {
            debug_assert_eq!(e, self.hi);
            self.lo
        }
    }
}

/// A set of blocks over the edges of a host graph.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct StrongBlockingSet {
    blocks: BTreeSet<Block>,
}

impl StrongBlockingSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_blocks(blocks: impl IntoIterator<Item = Block>) -> Self {
        StrongBlockingSet {
            blocks: blocks.into_iter().collect(),
        }
    }

    pub fn insert(&mut self, b: Block) -> bool {
        self.blocks.insert(b)
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Block> + '_ {
        self.blocks.iter()
    }

    pub fn validate(&self, host: &WeightedGraph) -> Result<()> {
        for b in &self.blocks {
            host.check_edge(b.lo)?;
            host.check_edge(b.hi)?;
        }
        Ok(())
    }

    /// Number of blocks each edge of the host participates in.
    pub fn frequencies(&self, m: usize) -> Vec<usize> {
        let mut freq = vec![0usize; m];
        for b in &self.blocks {
            freq[b.lo] += 1;
            freq[b.hi] += 1;
        }
        freq
    }

    /// For each edge, the list of partner edges over all blocks containing it.
    pub fn partners(&self, m: usize) -> Vec<Vec<EdgeId>> {
        let mut partners = vec![Vec::new(); m];
        for b in &self.blocks {
            partners[b.lo].push(b.hi);
            partners[b.hi].push(b.lo);
        }
        partners
    }
}

impl FromIterator<Block> for StrongBlockingSet {
    fn from_iter<I: IntoIterator<Item = Block>>(iter: I) -> Self {
        StrongBlockingSet::from_blocks(iter)
    }
}

/// Builds the blocking set implicit in a greedy run: one block per
/// (forcing edge, kept edge) pair, expressed in the spanner's edge ids.
///
/// For exact traces the result has at most `f * |E(H)|` blocks, for
/// approximate traces at most `(2k-1) f * |E(H)|`.
pub fn extract_blocking_set(result: &SpannerResult) -> Result<StrongBlockingSet> {
    let mut blocks = StrongBlockingSet::new();
    for &kept in &result.trace.kept {
        let forcing = result
            .trace
            .forcing
            .get(&kept)
            .ok_or(Error::CorruptTrace { edge: kept })?;
        let kept_sp = result
            .spanner_id(kept)
            .ok_or(Error::CorruptTrace { edge: kept })?;
        for x in forcing.iter() {
            let x_sp = result
                .spanner_id(x)
                .ok_or(Error::CorruptTrace { edge: x })?;
            blocks.insert(Block::new(x_sp, kept_sp)?);
        }
    }
    Ok(blocks)
}

/// Result of a strong-blocking verification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BlockingVerdict {
    Ok,
    /// A cycle of at most t edges with no block covering its heaviest edge.
    Counterexample(Vec<EdgeId>),
}

impl BlockingVerdict {
    pub fn is_ok(&self) -> bool {
        matches!(self, BlockingVerdict::Ok)
    }
}

/// Exhaustively checks that `b` is a strong t-blocking set for `h`: every
/// simple cycle of at most `t` edges must contain a block one of whose edges
/// is the cycle's heaviest edge. Bounds below 3 verify vacuously since a
/// simple graph has no shorter cycles. Cycle enumeration limits apply (desk
/// scale: t <= 10, m up to a few hundred).
pub fn verify_strong_blocking(
    h: &WeightedGraph,
    b: &StrongBlockingSet,
    t: usize,
) -> Result<BlockingVerdict> {
    b.validate(h)?;
    let partners = b.partners(h.edge_count());
    for cycle in enumerate_cycles(h, t) {
        // canonical order is the edge id order, so heaviest = max id
        let heaviest = *cycle.iter().max().expect("cycles are nonempty");
        let on_cycle: BTreeSet<EdgeId> = cycle.iter().copied().collect();
        let covered = partners[heaviest].iter().any(|p| on_cycle.contains(p));
        if !covered {
            return Ok(BlockingVerdict::Counterexample(cycle));
        }
    }
    Ok(BlockingVerdict::Ok)
}

/// Non-certifying spot check for instances too large to enumerate: draws
/// random short cycles (an edge plus a randomized alternative path between
/// its endpoints) and checks each sampled cycle the same way the exhaustive
/// verifier would. `Ok` only means no counterexample was sampled.
pub fn sample_strong_blocking(
    h: &WeightedGraph,
    b: &StrongBlockingSet,
    t: usize,
    trials: usize,
    seed: u64,
) -> Result<BlockingVerdict> {
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};

    b.validate(h)?;
    if h.edge_count() == 0 || t < 3 {
        return Ok(BlockingVerdict::Ok);
    }
    let partners = b.partners(h.edge_count());
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let e = rng.random_range(0..h.edge_count());
        let (u, v) = (h.edge(e).u, h.edge(e).v);
        // randomized BFS for an alternative u-v path avoiding e
        let mut order: Vec<usize> = (0..h.node_count()).collect();
        order.shuffle(&mut rng);
        let mut parent: Vec<Option<(usize, EdgeId)>> = vec![None; h.node_count()];
        let mut seen = vec![false; h.node_count()];
        let mut queue = std::collections::VecDeque::new();
        seen[u] = true;
        queue.push_back(u);
        while let Some(x) = queue.pop_front() {
            let mut nbs: Vec<(usize, EdgeId)> = h.neighbors(x).to_vec();
            nbs.sort_by_key(|&(nb, _)| order[nb]);
            for (nb, through) in nbs {
                if through == e || seen[nb] {
                    continue;
                }
                seen[nb] = true;
                parent[nb] = Some((x, through));
                queue.push_back(nb);
            }
        }
        if !seen[v] {
            continue;
        }
        let mut cycle = vec![e];
        let mut cur = v;
        while cur != u {
            let (p, through) = parent[cur].expect("reachable node has a parent");
            cycle.push(through);
            cur = p;
        }
        if cycle.len() > t {
            continue;
        }
        let heaviest = *cycle.iter().max().unwrap();
        let on_cycle: BTreeSet<EdgeId> = cycle.iter().copied().collect();
        if !partners[heaviest].iter().any(|p| on_cycle.contains(p)) {
            return Ok(BlockingVerdict::Counterexample(cycle));
        }
    }
    Ok(BlockingVerdict::Ok)
}

/// Deletes high-frequency edges until every surviving edge participates in
/// fewer than `4f` blocks, dropping the blocks of deleted edges. Requires
/// `|b| <= f * |E(h)|`; a Markov argument then guarantees at most half the
/// edges are deleted. Deleting edges only destroys cycles, so the surviving
/// blocks still strongly block every surviving short cycle.
pub fn reduce_block_frequency(
    h: &WeightedGraph,
    b: &StrongBlockingSet,
    f: usize,
) -> Result<(WeightedGraph, StrongBlockingSet)> {
    if f == 0 {
        return Err(Error::Precondition(
            "frequency parameter must be positive".into(),
        ));
    }
    b.validate(h)?;
    let m = h.edge_count();
    if b.len() > f * m {
        return Err(Error::Precondition(format!(
            "blocking set has {} blocks, more than f * m = {}",
            b.len(),
            f * m
        )));
    }
    let mut alive_edge = vec![true; m];
    let mut blocks: BTreeSet<Block> = b.iter().copied().collect();
    loop {
        let mut freq = vec![0usize; m];
        for blk in &blocks {
            freq[blk.lo()] += 1;
            freq[blk.hi()] += 1;
        }
        // highest frequency first, ties to the smallest edge id
        let worst = (0..m)
            .filter(|&e| alive_edge[e] && freq[e] >= 4 * f)
            .max_by_key(|&e| (freq[e], std::cmp::Reverse(e)));
        let Some(e) = worst else { break };
        alive_edge[e] = false;
        blocks.retain(|blk| !blk.contains(e));
    }
    let survivors: Vec<EdgeId> = (0..m).filter(|&e| alive_edge[e]).collect();
    let (reduced, _) = h.subgraph(&survivors)?;
    // remap surviving block ids into the reduced graph
    let mut new_id = vec![usize::MAX; m];
    for (idx, &old) in survivors.iter().enumerate() {
        new_id[old] = idx;
    }
    let remapped: StrongBlockingSet = blocks
        .into_iter()
        .map(|blk| {
            Block::new(new_id[blk.lo()], new_id[blk.hi()]).expect("distinct ids stay distinct")
        })
        .collect();
    Ok((reduced, remapped))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_random, WeightMode};
    use crate::greedy::{ft_greedy_approx, ft_greedy_exact};

    fn triangle() -> WeightedGraph {
        WeightedGraph::new(3, vec![(0, 1, 1.0), (1, 2, 2.0), (0, 2, 3.0)]).unwrap()
    }

    #[test]
    fn forest_trace_yields_empty_blocking_set() {
        let g = WeightedGraph::new(4, vec![(0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0)]).unwrap();
        let r = ft_greedy_exact(&g, 2, 2).unwrap();
        let b = extract_blocking_set(&r).unwrap();
        assert!(b.is_empty());
        assert!(verify_strong_blocking(&r.spanner, &b, 4).unwrap().is_ok());
    }

    #[test]
    fn missing_forcing_entry_is_a_corrupt_trace() {
        let g = triangle();
        let mut r = ft_greedy_exact(&g, 1, 1).unwrap();
        let &kept = r.trace.kept.first().unwrap();
        r.trace.forcing.remove(&kept);
        assert!(matches!(
            extract_blocking_set(&r),
            Err(Error::CorruptTrace { edge }) if edge == kept
        ));
    }

    #[test]
    fn triangle_block_must_cover_heaviest() {
        let g = triangle();
        // edges in canonical order: e0 = (0,1) w1, e1 = (1,2) w2, e2 = (0,2) w3
        let good = StrongBlockingSet::from_blocks([Block::new(0, 2).unwrap()]);
        assert!(verify_strong_blocking(&g, &good, 3).unwrap().is_ok());
        let bad = StrongBlockingSet::from_blocks([Block::new(0, 1).unwrap()]);
        match verify_strong_blocking(&g, &bad, 3).unwrap() {
            BlockingVerdict::Counterexample(cycle) => assert_eq!(cycle.len(), 3),
            BlockingVerdict::Ok => panic!("block misses the heaviest edge"),
        }
    }

    #[test]
    fn c5_single_fault_run_is_blocked_and_small() {
        let g = WeightedGraph::new(5, (0..5).map(|i| (i, (i + 1) % 5, 1.0)).collect::<Vec<_>>())
            .unwrap();
        let r = ft_greedy_exact(&g, 1, 1).unwrap();
        let b = extract_blocking_set(&r).unwrap();
        for fs in r.trace.forcing.values() {
            assert!(fs.len() <= 1);
        }
        assert!(b.len() <= r.spanner.edge_count());
        assert!(verify_strong_blocking(&r.spanner, &b, 2 * r.k)
            .unwrap()
            .is_ok());
    }

    #[test]
    fn sampled_blocking_check_agrees_at_desk_scale() {
        // valid pair: sampling never refutes what exhaustion certifies
        let g = gen_random(12, 30, WeightMode::Unit, 4).unwrap();
        let r = ft_greedy_exact(&g, 1, 2).unwrap();
        let b = extract_blocking_set(&r).unwrap();
        assert!(verify_strong_blocking(&r.spanner, &b, 4).unwrap().is_ok());
        assert!(sample_strong_blocking(&r.spanner, &b, 4, 200, 7)
            .unwrap()
            .is_ok());
        // broken pair: a triangle whose block misses the heaviest edge is
        // found quickly
        let tri = triangle();
        let bad = StrongBlockingSet::from_blocks([Block::new(0, 1).unwrap()]);
        let verdict = sample_strong_blocking(&tri, &bad, 3, 50, 1).unwrap();
        assert!(matches!(verdict, BlockingVerdict::Counterexample(_)));
    }

    #[test]
    fn exact_runs_satisfy_size_bound_and_blocking() {
        for seed in 0..12u64 {
            let g = gen_random(10, 18, WeightMode::Unit, seed).unwrap();
            let r = ft_greedy_exact(&g, 2, 2).unwrap();
            let b = extract_blocking_set(&r).unwrap();
            assert!(b.len() <= r.f * r.spanner.edge_count());
            assert!(verify_strong_blocking(&r.spanner, &b, 2 * r.k)
                .unwrap()
                .is_ok());
        }
    }

    #[test]
    fn approx_runs_satisfy_size_bound_and_blocking() {
        for seed in 0..12u64 {
            let g = gen_random(10, 18, WeightMode::Uniform { lo: 0.2, hi: 1.0 }, seed).unwrap();
            let r = ft_greedy_approx(&g, 2, 2).unwrap();
            let b = extract_blocking_set(&r).unwrap();
            assert!(b.len() <= (2 * r.k - 1) * r.f * r.spanner.edge_count());
            assert!(verify_strong_blocking(&r.spanner, &b, 2 * r.k)
                .unwrap()
                .is_ok());
        }
    }

    #[test]
    fn reduce_empty_blocking_set_is_identity() {
        let g = triangle();
        let (h, b) = reduce_block_frequency(&g, &StrongBlockingSet::new(), 1).unwrap();
        assert_eq!(h.edge_count(), 3);
        assert!(b.is_empty());
    }

    #[test]
    fn reduce_deletes_block_star_center() {
        // path graph with 6 edges; edge 0 participates in 4 blocks (f = 1)
        let g = WeightedGraph::new(7, (0..6).map(|i| (i, i + 1, 1.0)).collect::<Vec<_>>()).unwrap();
        let b: StrongBlockingSet = (1..=4).map(|e| Block::new(0, e).unwrap()).collect();
        let (h, b2) = reduce_block_frequency(&g, &b, 1).unwrap();
        assert_eq!(h.edge_count(), 5);
        assert!(b2.is_empty());
        // the deleted edge was the one with the blocks
        assert!(h.edge_between(0, 1).is_none());
    }

    #[test]
    fn reduce_postconditions_on_greedy_instance() {
        let g = gen_random(20, 60, WeightMode::Unit, 5).unwrap();
        let r = ft_greedy_exact(&g, 2, 2).unwrap();
        let b = extract_blocking_set(&r).unwrap();
        let f = r.f.max(1);
        let (h2, b2) = reduce_block_frequency(&r.spanner, &b, f).unwrap();
        assert!(h2.edge_count() * 2 >= r.spanner.edge_count());
        let freq = b2.frequencies(h2.edge_count());
        assert!(freq.iter().all(|&c| c < 4 * f));
        assert!(verify_strong_blocking(&h2, &b2, 2 * r.k).unwrap().is_ok());
    }

    #[test]
    fn reduce_preconditions() {
        let g = triangle();
        let b: StrongBlockingSet = [
            Block::new(0, 1).unwrap(),
            Block::new(0, 2).unwrap(),
            Block::new(1, 2).unwrap(),
        ]
        .into_iter()
        .collect();
        assert!(reduce_block_frequency(&g, &b, 0).is_err());
        assert!(reduce_block_frequency(&g, &b, 1).is_ok());
        // averaging hypothesis |b| <= f * m violated: 5 blocks on 4 edges, f = 1
        let path =
            WeightedGraph::new(5, (0..4).map(|i| (i, i + 1, 1.0)).collect::<Vec<_>>()).unwrap();
        let overfull: StrongBlockingSet = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]
            .into_iter()
            .map(|(a, b)| Block::new(a, b).unwrap())
            .collect();
        assert!(matches!(
            reduce_block_frequency(&path, &overfull, 1),
            Err(Error::Precondition(_))
        ));
    }
}
