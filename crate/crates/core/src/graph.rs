//! Simple undirected weighted graphs with a canonical total order on edges.
//!
//! Edge ids are assigned in canonical-order position: edges are sorted by
//! `(weight, min endpoint, max endpoint)` at construction, so `EdgeId`
//! comparison *is* the canonical order and the heaviest edge of any nonempty
//! edge subset is simply the one with the largest id. Graphs derived from an
//! existing graph (subgraphs, degree splits) inherit the parent order instead
//! of re-sorting, which keeps "heaviest" stable under those operations.

use std::collections::BTreeSet;

use crate::error::{Error, Result};

pub type NodeId = usize;
pub type EdgeId = usize;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub u: NodeId,
    pub v: NodeId,
    pub w: f64,
}

impl Edge {
    /// Endpoint pair normalized as (min, max).
    pub fn key_pair(&self) -> (NodeId, NodeId) {
        (self.u.min(self.v), self.u.max(self.v))
    }

    /// The endpoint opposite to `x`; panics if `x` is not an endpoint.
    pub fn other(&self, x: NodeId) -> NodeId {
        if x == self.u {
            self.v
        } else {
            debug_assert_eq!(x, self.v);
            self.u
        }
    }

    fn canonical_key(&self) -> (f64, NodeId, NodeId) {
        let (a, b) = self.key_pair();
        (self.w, a, b)
    }
}

fn key_cmp(a: &(f64, NodeId, NodeId), b: &(f64, NodeId, NodeId)) -> std::cmp::Ordering {
    a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2))
}

/// Simple undirected graph with non-negative edge weights.
///
/// Immutable after construction; all queries are pure.
#[derive(Debug, Clone)]
pub struct WeightedGraph {
    n: usize,
    edges: Vec<Edge>,
    adj: Vec<Vec<(NodeId, EdgeId)>>,
}

impl WeightedGraph {
    /// Builds a graph from an unordered edge list, sorting edges into
    /// canonical order and assigning ids by position.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (NodeId, NodeId, f64)>) -> Result<Self> {
        let mut list: Vec<Edge> = edges
            .into_iter()
            .map(|(u, v, w)| Edge { u, v, w })
            .collect();
        list.sort_by(|a, b| key_cmp(&a.canonical_key(), &b.canonical_key()));
        Self::from_canonical_edges(n, list)
    }

    /// Builds a graph whose edge order is taken as-is (the caller's canonical
    /// order). Weights must be nondecreasing; used for graphs derived from a
    /// parent graph so that equal-weight ties keep their original resolution.
    pub(crate) fn from_canonical_edges(n: usize, edges: Vec<Edge>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        let mut prev_w = 0.0_f64;
        for e in &edges {
            if e.u >= n {
                return Err(Error::InvalidNode { node: e.u, n });
            }
            if e.v >= n {
                return Err(Error::InvalidNode { node: e.v, n });
            }
            if e.u == e.v {
                return Err(Error::SelfLoop { node: e.u });
            }
            if !(e.w.is_finite() && e.w >= 0.0) {
                return Err(Error::BadWeight { value: e.w });
            }
            if e.w < prev_w {
                return Err(Error::Precondition(
                    "edge weights not in canonical (nondecreasing) order".into(),
                ));
            }
            prev_w = e.w;
            if !seen.insert(e.key_pair()) {
                let (u, v) = e.key_pair();
                return Err(Error::DuplicateEdge { u, v });
            }
        }
        let mut adj = vec![Vec::new(); n];
        for (id, e) in edges.iter().enumerate() {
            adj[e.u].push((e.v, id));
            adj[e.v].push((e.u, id));
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(WeightedGraph { n, edges, adj })
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Incident (neighbor, edge) pairs of `v`, sorted ascending.
    pub fn neighbors(&self, v: NodeId) -> &[(NodeId, EdgeId)] {
        &self.adj[v]
    }

    pub fn degree(&self, v: NodeId) -> usize {
        self.adj[v].len()
    }

    /// Average degree 2m/n (0 for the empty node set).
    pub fn average_degree(&self) -> f64 {
        if self.n == 0 {
            0.0
        } else {
            2.0 * self.edges.len() as f64 / self.n as f64
        }
    }

    /// Looks up the edge between `u` and `v`, if present.
    pub fn edge_between(&self, u: NodeId, v: NodeId) -> Option<EdgeId> {
        if u >= self.n || v >= self.n {
            return None;
        }
        // adjacency lists are sorted by (neighbor, edge id)
        let list = &self.adj[u];
        let idx = list.partition_point(|&(nb, _)| nb < v);
        list.get(idx).filter(|&&(nb, _)| nb == v).map(|&(_, e)| e)
    }

    pub fn check_node(&self, v: NodeId) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::InvalidNode { node: v, n: self.n })
        }
    }

    pub fn check_edge(&self, e: EdgeId) -> Result<()> {
        if e < self.edges.len() {
            Ok(())
        } else {
            Err(Error::InvalidEdge {
                edge: e,
                m: self.edges.len(),
            })
        }
    }

    /// Extracts the subgraph on the given edge ids (strictly ascending).
    /// Returns the new graph together with the map from new edge ids back to
    /// ids in `self`. The node set is unchanged; the canonical order is the
    /// inherited one.
    pub fn subgraph(&self, edge_ids: &[EdgeId]) -> Result<(WeightedGraph, Vec<EdgeId>)> {
        let mut picked = Vec::with_capacity(edge_ids.len());
        let mut prev: Option<EdgeId> = None;
        for &e in edge_ids {
            self.check_edge(e)?;
            if prev.is_some_and(|p| p >= e) {
                return Err(Error::Precondition(
                    "subgraph edge ids must be strictly ascending".into(),
                ));
            }
            prev = Some(e);
            picked.push(self.edges[e]);
        }
        let g = WeightedGraph::from_canonical_edges(self.n, picked)?;
        Ok((g, edge_ids.to_vec()))
    }

    /// True if every edge of `self` appears in `host` with identical weight.
    /// Returns the map from our edge ids to host edge ids.
    pub fn embed_into(&self, host: &WeightedGraph) -> Result<Vec<EdgeId>> {
        if self.n != host.n {
            return Err(Error::NotSubgraph(format!(
                "node counts differ ({} vs {})",
                self.n, host.n
            )));
        }
        let mut map = Vec::with_capacity(self.edges.len());
        for e in &self.edges {
            let host_id = host.edge_between(e.u, e.v).ok_or_else(|| {
                Error::NotSubgraph(format!("edge {{{}, {}}} missing from host", e.u, e.v))
            })?;
            if host.edges[host_id].w != e.w {
                return Err(Error::NotSubgraph(format!(
                    "edge {{{}, {}}} has weight {} in subgraph but {} in host",
                    e.u, e.v, e.w, host.edges[host_id].w
                )));
            }
            map.push(host_id);
        }
        Ok(map)
    }
}

/// A set of edge ids designated as failed, always interpreted relative to a
/// host graph.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FaultSet {
    edges: BTreeSet<EdgeId>,
}

impl FaultSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_edges(edges: impl IntoIterator<Item = EdgeId>) -> Self {
        FaultSet {
            edges: edges.into_iter().collect(),
        }
    }

    pub fn insert(&mut self, e: EdgeId) -> bool {
        self.edges.insert(e)
    }

    pub fn remove(&mut self, e: EdgeId) -> bool {
        self.edges.remove(&e)
    }

    pub fn contains(&self, e: EdgeId) -> bool {
        self.edges.contains(&e)
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.edges.iter().copied()
    }

    pub fn validate(&self, g: &WeightedGraph) -> Result<()> {
        for e in self.iter() {
            g.check_edge(e)?;
        }
        Ok(())
    }

    /// Dense membership mask for fast queries.
    pub(crate) fn mask(&self, m: usize) -> Vec<bool> {
        let mut mask = vec![false; m];
        for e in self.iter() {
            if e < m {
                mask[e] = true;
            }
        }
        mask
    }
}

impl FromIterator<EdgeId> for FaultSet {
    fn from_iter<I: IntoIterator<Item = EdgeId>>(iter: I) -> Self {
        FaultSet::from_edges(iter)
    }
}

impl std::fmt::Display for FaultSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for e in self.iter() {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
            first = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> WeightedGraph {
        WeightedGraph::new(3, vec![(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0)]).unwrap()
    }

    #[test]
    fn canonical_order_sorts_by_weight_then_endpoints() {
        let g = WeightedGraph::new(4, vec![(2, 3, 1.0), (0, 1, 2.0), (1, 2, 1.0)]).unwrap();
        // weight 1 edges first, tie broken by (min, max) pair
        assert_eq!(g.edge(0).key_pair(), (1, 2));
        assert_eq!(g.edge(1).key_pair(), (2, 3));
        assert_eq!(g.edge(2).key_pair(), (0, 1));
    }

    #[test]
    fn canonical_order_independent_of_input_order() {
        let edges = vec![(0, 1, 2.0), (1, 2, 1.0), (2, 3, 1.0), (0, 3, 0.5)];
        let mut shuffled = edges.clone();
        shuffled.reverse();
        let a = WeightedGraph::new(4, edges).unwrap();
        let b = WeightedGraph::new(4, shuffled).unwrap();
        for e in 0..a.edge_count() {
            assert_eq!(a.edge(e).key_pair(), b.edge(e).key_pair());
            assert_eq!(a.edge(e).w, b.edge(e).w);
        }
    }

    #[test]
    fn rejects_self_loops_duplicates_bad_weights() {
        assert!(matches!(
            WeightedGraph::new(2, vec![(0, 0, 1.0)]),
            Err(Error::SelfLoop { .. })
        ));
        assert!(matches!(
            WeightedGraph::new(2, vec![(0, 1, 1.0), (1, 0, 2.0)]),
            Err(Error::DuplicateEdge { .. })
        ));
        assert!(matches!(
            WeightedGraph::new(2, vec![(0, 1, -1.0)]),
            Err(Error::BadWeight { .. })
        ));
        assert!(matches!(
            WeightedGraph::new(2, vec![(0, 1, f64::NAN)]),
            Err(Error::BadWeight { .. })
        ));
        assert!(matches!(
            WeightedGraph::new(2, vec![(0, 2, 1.0)]),
            Err(Error::InvalidNode { .. })
        ));
    }

    #[test]
    fn edge_between_lookup() {
        let g = triangle();
        assert!(g.edge_between(0, 1).is_some());
        assert_eq!(g.edge_between(0, 1), g.edge_between(1, 0));
        let h = WeightedGraph::new(3, vec![(0, 1, 1.0)]).unwrap();
        assert_eq!(h.edge_between(1, 2), None);
    }

    #[test]
    fn subgraph_preserves_order_and_maps_ids() {
        let g = WeightedGraph::new(4, vec![(0, 1, 1.0), (1, 2, 2.0), (2, 3, 3.0)]).unwrap();
        let (sub, map) = g.subgraph(&[0, 2]).unwrap();
        assert_eq!(sub.edge_count(), 2);
        assert_eq!(map, vec![0, 2]);
        assert_eq!(sub.edge(1).w, 3.0);
        assert!(g.subgraph(&[2, 0]).is_err());
    }

    #[test]
    fn embed_checks_weights() {
        let g = triangle();
        let h = WeightedGraph::new(3, vec![(0, 1, 1.0)]).unwrap();
        assert!(h.embed_into(&g).is_ok());
        let bad = WeightedGraph::new(3, vec![(0, 1, 2.0)]).unwrap();
        assert!(bad.embed_into(&g).is_err());
    }

    #[test]
    fn fault_set_basics() {
        let mut fs = FaultSet::new();
        assert!(fs.is_empty());
        fs.insert(3);
        fs.insert(1);
        fs.insert(3);
        assert_eq!(fs.len(), 2);
        assert_eq!(fs.to_string(), "1,3");
        assert!(fs.contains(3));
        fs.remove(3);
        assert!(!fs.contains(3));
    }
}
