//! Girth and bounded-length simple cycle enumeration.

use crate::ext::{Ext, HopCount};
use crate::graph::{EdgeId, NodeId, WeightedGraph};

/// Minimum number of edges on any cycle; `Infinite` for forests.
pub fn girth(g: &WeightedGraph) -> HopCount {
    let n = g.node_count();
    let mut best: Option<usize> = None;
    for root in 0..n {
        // BFS from root; any non-tree edge (u, v) closes a walk of length
        // dist(u) + dist(v) + 1 that contains a cycle of at most that length,
        // and a shortest cycle is realized exactly for roots on it.
        let mut dist: Vec<Option<usize>> = vec![None; n];
        let mut via: Vec<Option<EdgeId>> = vec![None; n];
        let mut queue = std::collections::VecDeque::new();
        dist[root] = Some(0);
        queue.push_back(root);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for &(v, e) in g.neighbors(u) {
                if via[u] == Some(e) {
                    continue;
                }
                match dist[v] {
                    None => {
                        dist[v] = Some(du + 1);
                        via[v] = Some(e);
                        queue.push_back(v);
                    }
                    Some(dv) => {
                        let cycle = du + dv + 1;
                        if best.is_none_or(|b| cycle < b) {
                            best = Some(cycle);
                        }
                    }
                }
            }
        }
    }
    match best {
        Some(b) => Ext::Finite(b),
        None => Ext::Infinite,
    }
}

/// Enumerates every simple cycle with at most `max_len` edges exactly once
/// (up to rotation and reflection). Each cycle is reported as its edge list
/// in traversal order starting from the cycle's smallest node.
///
/// Intended for desk-scale graphs; cost grows with the number of bounded
/// cycles.
pub fn enumerate_cycles(g: &WeightedGraph, max_len: usize) -> Vec<Vec<EdgeId>> {
    let mut out = Vec::new();
    if max_len < 3 {
        return out;
    }
    let n = g.node_count();
    let mut in_path = vec![false; n];
    for s in 0..n {
        let mut nodes = vec![s];
        let mut edges: Vec<EdgeId> = Vec::new();
        in_path[s] = true;
        extend(
            g,
            s,
            max_len,
            &mut nodes,
            &mut edges,
            &mut in_path,
            &mut out,
        );
        in_path[s] = false;
    }
    out
}

fn extend(
    g: &WeightedGraph,
    s: NodeId,
    max_len: usize,
    nodes: &mut Vec<NodeId>,
    edges: &mut Vec<EdgeId>,
    in_path: &mut [bool],
    out: &mut Vec<Vec<EdgeId>>,
) {
    let cur = *nodes.last().unwrap();
    for &(nb, e) in g.neighbors(cur) {
        if nb == s && edges.len() >= 2 {
            // close the cycle; dedupe reflections by orientation
            if nodes[1] < cur {
                let mut cycle = edges.clone();
                cycle.push(e);
                out.push(cycle);
            }
        } else if nb > s && !in_path[nb] && edges.len() + 2 <= max_len {
            nodes.push(nb);
            edges.push(e);
            in_path[nb] = true;
            extend(g, s, max_len, nodes, edges, in_path, out);
            in_path[nb] = false;
            edges.pop();
            nodes.pop();
        }
    }
}
