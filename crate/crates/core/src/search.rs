//! Shortest-path queries with excluded (failed) edges.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::error::Result;
use crate::ext::{Dist, Ext, HopCount};
use crate::graph::{EdgeId, FaultSet, NodeId, WeightedGraph};

/// Shortest-path weight from `s` to `t` in `g` minus the excluded edges.
pub fn weighted_distance(
    g: &WeightedGraph,
    s: NodeId,
    t: NodeId,
    excluded: &FaultSet,
) -> Result<Dist> {
    g.check_node(s)?;
    g.check_node(t)?;
    excluded.validate(g)?;
    Ok(weighted_distances_from(g, s, excluded)[t])
}

/// Single-source Dijkstra over the surviving edges.
pub fn weighted_distances_from(g: &WeightedGraph, s: NodeId, excluded: &FaultSet) -> Vec<Dist> {
    let mask = excluded.mask(g.edge_count());
    let mut dist: Vec<Dist> = vec![Ext::Infinite; g.node_count()];
    let mut done = vec![false; g.node_count()];
    let mut heap = BinaryHeap::new();
    dist[s] = Ext::Finite(0.0);
    heap.push(Reverse((OrdF64(0.0), s)));
    while let Some(Reverse((OrdF64(d), u))) = heap.pop() {
        if done[u] {
            continue;
        }
        done[u] = true;
        for &(v, e) in g.neighbors(u) {
            if mask[e] || done[v] {
                continue;
            }
            let nd = d + g.edge(e).w;
            if Ext::Finite(nd) < dist[v] {
                dist[v] = Ext::Finite(nd);
                heap.push(Reverse((OrdF64(nd), v)));
            }
        }
    }
    dist
}

/// Hop (unweighted) distance from `s` to `t` minus the excluded edges.
pub fn hop_distance(
    g: &WeightedGraph,
    s: NodeId,
    t: NodeId,
    excluded: &FaultSet,
) -> Result<HopCount> {
    g.check_node(s)?;
    g.check_node(t)?;
    excluded.validate(g)?;
    Ok(hop_distances_from(g, s, excluded)[t])
}

/// Single-source BFS over the surviving edges.
pub fn hop_distances_from(g: &WeightedGraph, s: NodeId, excluded: &FaultSet) -> Vec<HopCount> {
    let mask = excluded.mask(g.edge_count());
    let mut dist: Vec<HopCount> = vec![Ext::Infinite; g.node_count()];
    let mut queue = std::collections::VecDeque::new();
    dist[s] = Ext::Finite(0);
    queue.push_back(s);
    while let Some(u) = queue.pop_front() {
        let du = match dist[u] {
            Ext::Finite(d) => d,
            Ext::Infinite => unreachable!(),
        };
        for &(v, e) in g.neighbors(u) {
            if mask[e] || dist[v].is_finite() {
                continue;
            }
            dist[v] = Ext::Finite(du + 1);
            queue.push_back(v);
        }
    }
    dist
}

/// A concrete shortest path witness.
#[derive(Debug, Clone)]
pub struct PathWitness {
    pub weight: f64,
    pub edges: Vec<EdgeId>,
}

/// Minimum-weight `s`-`t` path, breaking weight ties by fewest edges.
/// Returns `None` when `t` is unreachable.
pub fn min_weight_path(
    g: &WeightedGraph,
    s: NodeId,
    t: NodeId,
    excluded: &FaultSet,
) -> Option<PathWitness> {
    let mask = excluded.mask(g.edge_count());
    let n = g.node_count();
    // label = (weight, hops); lexicographic Dijkstra
    let mut label: Vec<Option<(f64, usize)>> = vec![None; n];
    let mut parent: Vec<Option<(NodeId, EdgeId)>> = vec![None; n];
    let mut done = vec![false; n];
    let mut heap = BinaryHeap::new();
    label[s] = Some((0.0, 0));
    heap.push(Reverse((OrdF64(0.0), 0usize, s)));
    while let Some(Reverse((OrdF64(d), hops, u))) = heap.pop() {
        if done[u] {
            continue;
        }
        done[u] = true;
        if u == t {
            break;
        }
        for &(v, e) in g.neighbors(u) {
            if mask[e] || done[v] {
                continue;
            }
            let cand = (d + g.edge(e).w, hops + 1);
            let better = match label[v] {
                None => true,
                Some((w, h)) => cand.0 < w || (cand.0 == w && cand.1 < h),
            };
            if better {
                label[v] = Some(cand);
                parent[v] = Some((u, e));
                heap.push(Reverse((OrdF64(cand.0), cand.1, v)));
            }
        }
    }
    let (weight, _) = label[t]?;
    let mut edges = Vec::new();
    let mut cur = t;
    while cur != s {
        let (p, e) = parent[cur].expect("reachable node has a parent");
        edges.push(e);
        cur = p;
    }
    edges.reverse();
    Some(PathWitness { weight, edges })
}

/// Minimum-hop `s`-`t` path via BFS, deterministic by visiting neighbors in
/// ascending node order. Returns the edge sequence from `s` to `t`.
pub fn shortest_hop_path(
    g: &WeightedGraph,
    s: NodeId,
    t: NodeId,
    excluded: &FaultSet,
) -> Option<Vec<EdgeId>> {
    let mask = excluded.mask(g.edge_count());
    let n = g.node_count();
    let mut parent: Vec<Option<(NodeId, EdgeId)>> = vec![None; n];
    let mut seen = vec![false; n];
    let mut queue = std::collections::VecDeque::new();
    seen[s] = true;
    queue.push_back(s);
    'outer: while let Some(u) = queue.pop_front() {
        for &(v, e) in g.neighbors(u) {
            if mask[e] || seen[v] {
                continue;
            }
            seen[v] = true;
            parent[v] = Some((u, e));
            if v == t {
                break 'outer;
            }
            queue.push_back(v);
        }
    }
    if s == t {
        return Some(Vec::new());
    }
    if !seen[t] {
        return None;
    }
    let mut edges = Vec::new();
    let mut cur = t;
    while cur != s {
        let (p, e) = parent[cur].expect("reachable node has a parent");
        edges.push(e);
        cur = p;
    }
    edges.reverse();
    Some(edges)
}

/// Total order wrapper for finite, non-NaN weights.
#[derive(Debug, Clone, Copy, PartialEq)]
struct OrdF64(f64);

impl Eq for OrdF64 {}

impl PartialOrd for OrdF64 {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for OrdF64 {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.total_cmp(&other.0)
    }
}
