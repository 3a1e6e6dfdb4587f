//! Alternating-path machinery: classification, constructive search,
//! exhaustive counting, choke sets, the dispersion check, degree splitting,
//! and seeded edge subsampling.
//!
//! An alternating path is one whose even-position edges (1-based) are
//! canonically heavier than the odd-position edges adjacent to them; the
//! canonical order is the host graph's edge id order.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::blocking::{Block, StrongBlockingSet};
use crate::error::{Error, Result};
use crate::graph::{EdgeId, NodeId, WeightedGraph};

/// Documented exhaustive-enumeration ceilings for [`count_paths`] and
/// [`check_dispersion`]; larger instances are refused unless forced.
pub const MAX_CENSUS_NODES: usize = 30;
pub const MAX_CENSUS_LEN: usize = 5;

/// An oriented walk with its classification flags.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathRecord {
    /// Node sequence, one longer than `edges`.
    pub nodes: Vec<NodeId>,
    /// Edge sequence in traversal order.
    pub edges: Vec<EdgeId>,
    /// No repeated nodes.
    pub simple: bool,
    /// No repeated edges.
    pub edge_simple: bool,
    /// Even-position edges heavier than their odd neighbors.
    pub alternating: bool,
    /// No block of the classifying blocking set lies entirely on the path.
    pub unblocked: bool,
}

impl PathRecord {
    /// Validates the walk against `g` and computes all flags; `b` supplies
    /// the blockedness classification.
    pub fn classify(
        g: &WeightedGraph,
        b: &StrongBlockingSet,
        nodes: Vec<NodeId>,
        edges: Vec<EdgeId>,
    ) -> Result<PathRecord> {
        if nodes.len() != edges.len() + 1 {
            return Err(Error::Precondition(
                "a walk on j edges visits j+1 nodes".into(),
            ));
        }
        for &v in &nodes {
            g.check_node(v)?;
        }
        for (i, &e) in edges.iter().enumerate() {
            g.check_edge(e)?;
            let edge = g.edge(e);
            let (a, bb) = (nodes[i], nodes[i + 1]);
            if edge.key_pair() != (a.min(bb), a.max(bb)) {
                return Err(Error::Precondition(format!(
                    "edge {e} does not join consecutive nodes {a} and {bb}"
                )));
            }
        }
        b.validate(g)?;
        let simple = {
            let set: BTreeSet<_> = nodes.iter().collect();
            set.len() == nodes.len()
        };
        let edge_simple = {
            let set: BTreeSet<_> = edges.iter().collect();
            set.len() == edges.len()
        };
        let mut record = PathRecord {
            nodes,
            edges,
            simple,
            edge_simple,
            alternating: false,
            unblocked: false,
        };
        record.alternating = alternating_edges(&record.edges);
        record.unblocked = !is_blocked(&record, b);
        Ok(record)
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

/// Alternation over an edge id sequence: every even 1-based position must be
/// canonically heavier than the adjacent odd positions. For even-length
/// sequences the last edge has no successor to dominate.
fn alternating_edges(edges: &[EdgeId]) -> bool {
    for i in 2..=edges.len() {
        let cur = edges[i - 1];
        let prev = edges[i - 2];
        if i.is_multiple_of(2) {
            if cur <= prev {
                return false;
            }
        } else if prev <= cur {
            return false;
        }
    }
    true
}

/// True iff both edges of some block lie on the path (heaviness plays no
/// role for paths, unlike for cycles).
pub fn is_blocked(path: &PathRecord, b: &StrongBlockingSet) -> bool {
    let on_path: BTreeSet<EdgeId> = path.edges.iter().copied().collect();
    b.iter()
        .any(|blk| on_path.contains(&blk.lo()) && on_path.contains(&blk.hi()))
}

/// Finds an edge-simple alternating path on exactly `k` edges, or `None` if
/// no such path exists.
///
/// First tries the constructive peeling argument (strip each node's lightest
/// or heaviest incident edge depending on position parity, recurse, then
/// extend by the stripped edge of the last node), which always succeeds on
/// graphs with at least k*n edges. Falls back to exhaustive DFS below that
/// threshold.
pub fn find_alternating_kpath(g: &WeightedGraph, k: usize) -> Option<PathRecord> {
    if k == 0 {
        if g.node_count() == 0 {
            return None;
        }
        return Some(
            PathRecord::classify(g, &StrongBlockingSet::new(), vec![0], vec![])
                .expect("trivial walk is valid"),
        );
    }
    let found = peel(g, &vec![true; g.edge_count()], k).or_else(|| dfs_find(g, k));
    found.map(|(nodes, edges)| {
        let rec = PathRecord::classify(g, &StrongBlockingSet::new(), nodes, edges)
            .expect("constructed walk is valid");
        debug_assert!(rec.edge_simple && rec.alternating && rec.len() == k);
        rec
    })
}

fn peel(g: &WeightedGraph, alive: &[bool], k: usize) -> Option<(Vec<NodeId>, Vec<EdgeId>)> {
    if k == 0 {
        return Some((Vec::new(), Vec::new()));
    }
    let n = g.node_count();
    // per node, the lightest (odd level) or heaviest (even level) surviving
    // incident edge
    let mut removed: Vec<Option<EdgeId>> = vec![None; n];
    for (v, slot) in removed.iter_mut().enumerate() {
        let mut best: Option<EdgeId> = None;
        for &(_, e) in g.neighbors(v) {
            if !alive[e] {
                continue;
            }
            best = Some(match best {
                None => e,
                Some(cur) => {
                    if k.is_multiple_of(2) {
                        cur.max(e)
                    } else {
                        cur.min(e)
                    }
                }
            });
        }
        *slot = best;
    }
    let stripped: BTreeSet<EdgeId> = removed.iter().flatten().copied().collect();
    let mut next_alive = alive.to_vec();
    for &e in &stripped {
        next_alive[e] = false;
    }
    let (mut nodes, mut edges) = peel(g, &next_alive, k - 1)?;
    if edges.is_empty() {
        // anchor the empty prefix at a node that still has a stripped edge
        let v = (0..n).find(|&v| removed[v].is_some())?;
        nodes = vec![v];
    }
    let last = *nodes.last().unwrap();
    let e = removed[last]?;
    debug_assert!(!edges.contains(&e));
    nodes.push(g.edge(e).other(last));
    edges.push(e);
    Some((nodes, edges))
}

fn dfs_find(g: &WeightedGraph, k: usize) -> Option<(Vec<NodeId>, Vec<EdgeId>)> {
    let mut used = vec![false; g.edge_count()];
    for start in 0..g.node_count() {
        let mut nodes = vec![start];
        let mut edges = Vec::new();
        if dfs_extend(g, k, &mut nodes, &mut edges, &mut used) {
            return Some((nodes, edges));
        }
    }
    None
}

fn dfs_extend(
    g: &WeightedGraph,
    k: usize,
    nodes: &mut Vec<NodeId>,
    edges: &mut Vec<EdgeId>,
    used: &mut [bool],
) -> bool {
    if edges.len() == k {
        return true;
    }
    let cur = *nodes.last().unwrap();
    let pos = edges.len() + 1;
    for &(nb, e) in g.neighbors(cur) {
        if used[e] {
            continue;
        }
        if let Some(&prev) = edges.last() {
            let ok = if pos.is_multiple_of(2) {
                e > prev
            } else {
                prev > e
            };
            if !ok {
                continue;
            }
        }
        used[e] = true;
        nodes.push(nb);
        edges.push(e);
        if dfs_extend(g, k, nodes, edges, used) {
            return true;
        }
        edges.pop();
        nodes.pop();
        used[e] = false;
    }
    false
}

/// Which path class an enumeration pass counts. `All` fills every column;
/// the narrower filters prune the search and leave the other columns zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CensusFilter {
    All,
    Simple,
    Alternating,
    UnblockedAlternating,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CensusCounts {
    /// Simple paths.
    pub simple: u64,
    /// Edge-simple alternating paths (node repeats allowed).
    pub alternating: u64,
    /// Simple unblocked alternating paths.
    pub unblocked_alternating: u64,
}

impl CensusCounts {
    fn add(&mut self, other: &CensusCounts) {
        self.simple += other.simple;
        self.alternating += other.alternating;
        self.unblocked_alternating += other.unblocked_alternating;
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusRow {
    pub s: NodeId,
    pub t: NodeId,
    pub j: usize,
    pub counts: CensusCounts,
}

/// Exact oriented-path counts per (source, target, length). A path and its
/// reversal are distinct.
#[derive(Debug, Clone)]
pub struct CensusReport {
    pub n: usize,
    pub m: usize,
    pub average_degree: f64,
    pub max_len: usize,
    /// One row per (s, t, j) with j in 1..=max_len, in lexicographic order.
    pub rows: Vec<CensusRow>,
    /// Aggregate totals indexed by path length (index 0 unused).
    pub totals: Vec<CensusCounts>,
}

impl CensusReport {
    pub fn counts(&self, s: NodeId, t: NodeId, j: usize) -> &CensusCounts {
        debug_assert!(j >= 1 && j <= self.max_len);
        // rows are dense: (s * n + t) * max_len + (j - 1)
        &self.rows[(s * self.n + t) * self.max_len + (j - 1)].counts
    }

    /// CSV rendering with a schema version header.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# eftspan-census-csv v1");
        let _ = writeln!(out, "s,t,j,simple,alternating,unblocked_alternating");
        for row in &self.rows {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{}",
                row.s,
                row.t,
                row.j,
                row.counts.simple,
                row.counts.alternating,
                row.counts.unblocked_alternating
            );
        }
        out
    }
}

/// Exhaustively counts oriented paths of each length up to `max_len`,
/// classified per the filter. Refuses instances beyond the documented
/// ceilings unless `force` is set.
pub fn count_paths(
    g: &WeightedGraph,
    b: &StrongBlockingSet,
    max_len: usize,
    filter: CensusFilter,
    force: bool,
) -> Result<CensusReport> {
    if max_len == 0 {
        return Err(Error::Precondition(
            "path length bound must be positive".into(),
        ));
    }
    b.validate(g)?;
    if !force && (g.node_count() > MAX_CENSUS_NODES || max_len > MAX_CENSUS_LEN) {
        return Err(Error::BudgetExceeded {
            cost: (g.node_count() as u128).saturating_pow(2) * max_len as u128,
            budget: (MAX_CENSUS_NODES as u128).pow(2) * MAX_CENSUS_LEN as u128,
        });
    }
    let n = g.node_count();
    let mut rows: Vec<CensusRow> = Vec::with_capacity(n * n * max_len);
    for s in 0..n {
        for t in 0..n {
            for j in 1..=max_len {
                rows.push(CensusRow {
                    s,
                    t,
                    j,
                    counts: CensusCounts::default(),
                });
            }
        }
    }
    let partners = b.partners(g.edge_count());
    let mut state = TallyState {
        g,
        partners: &partners,
        filter,
        max_len,
        nodes: Vec::new(),
        edges: Vec::new(),
        used: vec![false; g.edge_count()],
        visits: vec![0u8; n],
        repeats: 0,
        alternating: true,
        blocked: false,
        rows: &mut rows,
    };
    for s in 0..n {
        state.nodes.push(s);
        state.visits[s] = 1;
        state.descend(s);
        state.visits[s] = 0;
        state.nodes.pop();
    }
    let mut totals = vec![CensusCounts::default(); max_len + 1];
    for row in &rows {
        totals[row.j].add(&row.counts);
    }
    Ok(CensusReport {
        n,
        m: g.edge_count(),
        average_degree: g.average_degree(),
        max_len,
        rows,
        totals,
    })
}

struct TallyState<'a> {
    g: &'a WeightedGraph,
    partners: &'a [Vec<EdgeId>],
    filter: CensusFilter,
    max_len: usize,
    nodes: Vec<NodeId>,
    edges: Vec<EdgeId>,
    used: Vec<bool>,
    visits: Vec<u8>,
    repeats: usize,
    alternating: bool,
    blocked: bool,
    rows: &'a mut Vec<CensusRow>,
}

impl TallyState<'_> {
    fn descend(&mut self, s: NodeId) {
        if self.edges.len() == self.max_len {
            return;
        }
        let cur = *self.nodes.last().unwrap();
        let pos = self.edges.len() + 1;
        let neighbor_count = self.g.neighbors(cur).len();
        for idx in 0..neighbor_count {
            let (nb, e) = self.g.neighbors(cur)[idx];
            if self.used[e] {
                continue;
            }
            let step_alternating = match self.edges.last() {
                None => true,
                Some(&prev) => {
                    if pos.is_multiple_of(2) {
                        e > prev
                    } else {
                        prev > e
                    }
                }
            };
            let next_alternating = self.alternating && step_alternating;
            let revisit = self.visits[nb] > 0;
            let newly_blocked = !self.blocked && self.partners[e].iter().any(|&p| self.used[p]);
            let next_blocked = self.blocked || newly_blocked;
            // filter-specific pruning; `All` enumerates every edge-simple walk
            let prune = match self.filter {
                CensusFilter::All => false,
                CensusFilter::Simple => revisit,
                CensusFilter::Alternating => !next_alternating,
                CensusFilter::UnblockedAlternating => revisit || !next_alternating || next_blocked,
            };
            if prune {
                continue;
            }
            self.used[e] = true;
            self.nodes.push(nb);
            self.edges.push(e);
            self.visits[nb] += 1;
            if self.visits[nb] == 2 {
                self.repeats += 1;
            }
            let (saved_alt, saved_blk) = (self.alternating, self.blocked);
            self.alternating = next_alternating;
            self.blocked = next_blocked;

            self.record(s, nb);
            self.descend(s);

            self.alternating = saved_alt;
            self.blocked = saved_blk;
            if self.visits[nb] == 2 {
                self.repeats -= 1;
            }
            self.visits[nb] -= 1;
            self.edges.pop();
            self.nodes.pop();
            self.used[e] = false;
        }
    }

    fn record(&mut self, s: NodeId, t: NodeId) {
        let j = self.edges.len();
        let n = self.g.node_count();
        let counts = &mut self.rows[(s * n + t) * self.max_len + (j - 1)].counts;
        let simple = self.repeats == 0;
        match self.filter {
            CensusFilter::All => {
                if simple {
                    counts.simple += 1;
                }
                if self.alternating {
                    counts.alternating += 1;
                    if simple && !self.blocked {
                        counts.unblocked_alternating += 1;
                    }
                }
            }
            CensusFilter::Simple => counts.simple += 1,
            CensusFilter::Alternating => counts.alternating += 1,
            CensusFilter::UnblockedAlternating => counts.unblocked_alternating += 1,
        }
    }
}

/// A per-pair choke set: every simple unblocked s-t path of at most k edges
/// uses one of these edges as its heaviest edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChokeSet {
    pub s: NodeId,
    pub t: NodeId,
    pub edges: BTreeSet<EdgeId>,
}

impl ChokeSet {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

/// Builds the choke set by the iterative rule: while some simple unblocked
/// s-t path of at most k edges has its heaviest edge uncovered, add the
/// heaviest such edge. Under the reduced-frequency hypothesis (every edge in
/// at most f blocks, b a strong 2k-blocking set) the result has at most
/// k*f + 1 edges.
pub fn build_choke_set(
    h: &WeightedGraph,
    b: &StrongBlockingSet,
    s: NodeId,
    t: NodeId,
    k: usize,
    f: usize,
) -> Result<ChokeSet> {
    h.check_node(s)?;
    h.check_node(t)?;
    b.validate(h)?;
    if k == 0 || f == 0 {
        return Err(Error::Precondition("k and f must be positive".into()));
    }
    let freq = b.frequencies(h.edge_count());
    if let Some(edge) = (0..h.edge_count()).find(|&e| freq[e] > f) {
        return Err(Error::Precondition(format!(
            "edge {edge} participates in {} blocks, more than f = {f}; reduce first",
            freq[edge]
        )));
    }
    // heaviest edges of all simple unblocked s-t paths with <= k edges
    let scan = HeaviestScan {
        h,
        partners: b.partners(h.edge_count()),
        target: t,
        limit: k,
    };
    let mut heaviest: BTreeSet<EdgeId> = BTreeSet::new();
    let mut visits = vec![false; h.node_count()];
    let mut edges: Vec<EdgeId> = Vec::new();
    visits[s] = true;
    scan.walk(s, &mut visits, &mut edges, &mut heaviest);

    // iterative covering: repeatedly add the heaviest uncovered candidate
    let mut cover = BTreeSet::new();
    while let Some(&next) = heaviest.iter().rev().find(|e| !cover.contains(*e)) {
        cover.insert(next);
    }
    Ok(ChokeSet { s, t, edges: cover })
}

/// DFS over simple unblocked paths to a target, recording each arrival's
/// heaviest edge.
struct HeaviestScan<'a> {
    h: &'a WeightedGraph,
    partners: Vec<Vec<EdgeId>>,
    target: NodeId,
    limit: usize,
}

impl HeaviestScan<'_> {
    fn walk(
        &self,
        cur: NodeId,
        visits: &mut [bool],
        edges: &mut Vec<EdgeId>,
        out: &mut BTreeSet<EdgeId>,
    ) {
        if edges.len() == self.limit {
            return;
        }
        for &(nb, e) in self.h.neighbors(cur) {
            if visits[nb] {
                continue;
            }
            // blocked paths are exempt; prune as soon as a block completes
            if self.partners[e].iter().any(|&p| edges.contains(&p)) {
                continue;
            }
            edges.push(e);
            if nb == self.target {
                out.insert(*edges.iter().max().unwrap());
            } else {
                visits[nb] = true;
                self.walk(nb, visits, edges, out);
                visits[nb] = false;
            }
            edges.pop();
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DispersionCell {
    pub s: NodeId,
    pub t: NodeId,
    pub j: usize,
    pub count: u64,
    pub bound: f64,
}

/// Outcome of the dispersion check: per-pair counts of simple unblocked
/// alternating j-paths against (c k^2 f)^floor(j/2).
#[derive(Debug, Clone)]
pub struct DispersionReport {
    pub ok: bool,
    /// Largest count/bound ratio observed (infinite if a zero bound is hit).
    pub max_ratio: f64,
    pub worst: Option<DispersionCell>,
    /// Smallest constant c that would make every checked cell pass.
    pub empirical_constant: f64,
    pub cells_checked: usize,
}

/// Checks that for every node pair and every j <= k, the number of simple
/// unblocked alternating s-t paths of length j is at most
/// `(c k^2 f)^floor(j/2)` (exponent (j-1)/2 for odd j, j/2 for even j).
/// Lengths 0 and 1 are structurally at most 1 and always pass.
pub fn check_dispersion(
    h: &WeightedGraph,
    b: &StrongBlockingSet,
    k: usize,
    f: usize,
    c: f64,
    force: bool,
) -> Result<DispersionReport> {
    if k == 0 {
        return Err(Error::Precondition("k must be positive".into()));
    }
    let report = count_paths(h, b, k, CensusFilter::UnblockedAlternating, force)?;
    let base = c * (k * k) as f64 * f as f64;
    let mut ok = true;
    let mut max_ratio = 0.0_f64;
    let mut worst: Option<DispersionCell> = None;
    let mut empirical = 0.0_f64;
    let mut cells = 0usize;
    for row in &report.rows {
        let count = row.counts.unblocked_alternating;
        let exponent = (row.j / 2) as i32;
        let bound = base.powi(exponent);
        cells += 1;
        let ratio = if count == 0 {
            0.0
        } else if bound == 0.0 {
            f64::INFINITY
        } else {
            count as f64 / bound
        };
        if ratio > max_ratio {
            max_ratio = ratio;
            worst = Some(DispersionCell {
                s: row.s,
                t: row.t,
                j: row.j,
                count,
                bound,
            });
        }
        if ratio > 1.0 {
            ok = false;
        }
        if exponent >= 1 && count > 0 && f > 0 {
            let required = (count as f64).powf(1.0 / exponent as f64) / ((k * k) as f64 * f as f64);
            empirical = empirical.max(required);
        }
    }
    Ok(DispersionReport {
        ok,
        max_ratio,
        worst,
        empirical_constant: empirical,
        cells_checked: cells,
    })
}

/// Splits nodes of degree at least four times the original average degree
/// into two copies with an equitable share of the incident edges, until no
/// such node remains. Edge ids, weights, and the canonical order are
/// preserved, so the blocking set carries over unchanged; splitting destroys
/// cycles but never creates them.
///
/// Returns the rewritten graph, the blocking set, and the provenance map
/// from new node ids to original ones.
pub fn split_high_degree(
    h: &WeightedGraph,
    b: &StrongBlockingSet,
) -> Result<(WeightedGraph, StrongBlockingSet, Vec<NodeId>)> {
    b.validate(h)?;
    let mut edges: Vec<crate::graph::Edge> = h.edges().to_vec();
    let mut node_map: Vec<NodeId> = (0..h.node_count()).collect();
    // degree-1 nodes cannot be meaningfully split, hence the floor of 2
    let threshold = (4.0 * h.average_degree()).max(2.0);
    loop {
        let n = node_map.len();
        let mut degree = vec![0usize; n];
        for e in &edges {
            degree[e.u] += 1;
            degree[e.v] += 1;
        }
        let target = (0..n)
            .filter(|&v| degree[v] as f64 >= threshold)
            .max_by_key(|&v| (degree[v], std::cmp::Reverse(v)));
        let v = match target {
            None => break,
            Some(v) => v,
        };
        let twin = n;
        node_map.push(node_map[v]);
        // move every other incident edge (by ascending edge id) to the twin
        let mut seen = 0usize;
        for e in edges.iter_mut() {
            let hit = e.u == v || e.v == v;
            if !hit {
                continue;
            }
            if seen % 2 == 1 {
                if e.u == v {
                    e.u = twin;
                } else {
                    e.v = twin;
                }
            }
            seen += 1;
        }
    }
    let split = WeightedGraph::from_canonical_edges(node_map.len(), edges)?;
    Ok((split, b.clone(), node_map))
}

/// Keeps each edge independently with probability `p` (seeded) and restricts
/// the blocking set to blocks with both edges surviving.
pub fn random_edge_subsample(
    h: &WeightedGraph,
    b: &StrongBlockingSet,
    p: f64,
    seed: u64,
) -> Result<(WeightedGraph, StrongBlockingSet)> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Precondition(format!(
            "keep probability {p} outside [0, 1]"
        )));
    }
    b.validate(h)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let kept: Vec<EdgeId> = (0..h.edge_count())
        .filter(|_| rng.random::<f64>() < p)
        .collect();
    let (sub, _) = h.subgraph(&kept)?;
    let mut new_id = vec![None; h.edge_count()];
    for (idx, &old) in kept.iter().enumerate() {
        new_id[old] = Some(idx);
    }
    let surviving: StrongBlockingSet = b
        .iter()
        .filter_map(|blk| match (new_id[blk.lo()], new_id[blk.hi()]) {
            (Some(a), Some(bb)) => Some(Block::new(a, bb).expect("distinct ids stay distinct")),
            _ => None,
        })
        .collect();
    Ok((sub, surviving))
}
