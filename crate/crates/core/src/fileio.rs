//! Text formats for graphs, blocking sets, and greedy traces.
//!
//! Graph format: first line `n m`, optionally followed by `L <count>` to
//! declare a bipartition (nodes `0..count` are the left side), then `m`
//! lines `u v w` with 0-based node ids. The weight may be omitted and
//! defaults to 1.0. `#` starts a comment.
//!
//! Blocking-set format: lines `e1 e2` of 0-based edge ids in the host graph.

use std::fmt::Write as _;

use crate::blocking::{Block, StrongBlockingSet};
use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::greedy::SpannerResult;

/// A parsed graph file: the graph plus the optional declared bipartition.
#[derive(Debug, Clone)]
pub struct GraphFile {
    pub graph: WeightedGraph,
    pub left_count: Option<usize>,
}

fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            None
        } else {
            Some((i + 1, line))
        }
    })
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

pub fn parse_graph(text: &str) -> Result<GraphFile> {
    let mut lines = data_lines(text);
    let (line_no, header) = lines
        .next()
        .ok_or_else(|| parse_err(0, "empty graph file"))?;
    let mut it = header.split_whitespace();
    let n: usize = it
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| parse_err(line_no, "expected node count"))?;
    let m: usize = it
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| parse_err(line_no, "expected edge count"))?;
    if it.next().is_some() {
        return Err(parse_err(line_no, "trailing tokens after `n m` header"));
    }

    let mut edges = Vec::with_capacity(m);
    let mut left_count = None;
    let mut first_data = true;
    for (line_no, line) in lines {
        let mut it = line.split_whitespace();
        let first = it.next().expect("data lines are nonempty");
        if first_data && first == "L" {
            first_data = false;
            let count: usize = it
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| parse_err(line_no, "expected left-side node count after `L`"))?;
            left_count = Some(count);
            continue;
        }
        first_data = false;
        let u: usize = first
            .parse()
            .map_err(|_| parse_err(line_no, "expected node id"))?;
        let v: usize = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| parse_err(line_no, "expected second node id"))?;
        let w: f64 = match it.next() {
            Some(t) => t
                .parse()
                .map_err(|_| parse_err(line_no, "expected edge weight"))?,
            None => 1.0,
        };
        if it.next().is_some() {
            return Err(parse_err(line_no, "trailing tokens after edge"));
        }
        edges.push((u, v, w));
    }
    if edges.len() != m {
        return Err(parse_err(
            0,
            format!("header declares {m} edges but {} were given", edges.len()),
        ));
    }
    let graph = WeightedGraph::new(n, edges)?;
    Ok(GraphFile { graph, left_count })
}

/// Renders a graph in the text format, edges in canonical order.
/// Weights round-trip exactly through this encoding.
pub fn write_graph(g: &WeightedGraph, left_count: Option<usize>) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", g.node_count(), g.edge_count());
    if let Some(l) = left_count {
        let _ = writeln!(out, "L {l}");
    }
    for e in g.edges() {
        let (a, b) = e.key_pair();
        let _ = writeln!(out, "{a} {b} {}", e.w);
    }
    out
}

pub fn parse_blocking(text: &str, host: &WeightedGraph) -> Result<StrongBlockingSet> {
    let mut blocks = StrongBlockingSet::new();
    for (line_no, line) in data_lines(text) {
        let mut it = line.split_whitespace();
        let e1: usize = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| parse_err(line_no, "expected edge id"))?;
        let e2: usize = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| parse_err(line_no, "expected second edge id"))?;
        if it.next().is_some() {
            return Err(parse_err(line_no, "trailing tokens after block"));
        }
        host.check_edge(e1)?;
        host.check_edge(e2)?;
        if e1 == e2 {
            return Err(parse_err(line_no, "a block must pair distinct edges"));
        }
        blocks.insert(Block::new(e1, e2)?);
    }
    Ok(blocks)
}

pub fn write_blocking(b: &StrongBlockingSet) -> String {
    let mut out = String::new();
    for blk in b.iter() {
        let _ = writeln!(out, "{} {}", blk.lo(), blk.hi());
    }
    out
}

/// Renders a greedy trace: run parameters, then one line per kept edge with
/// its forcing set (input-graph edge ids).
pub fn write_trace(r: &SpannerResult) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# eftspan trace v1");
    let _ = writeln!(out, "algorithm {}", r.algorithm);
    let _ = writeln!(out, "f {}", r.f);
    let _ = writeln!(out, "k {}", r.k);
    let _ = writeln!(out, "kept {}", r.trace.kept.len());
    for &e in &r.trace.kept {
        let _ = write!(out, "{e}:");
        for x in r.trace.forcing[&e].iter() {
            let _ = write!(out, " {x}");
        }
        let _ = writeln!(out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_weighted() {
        let g = WeightedGraph::new(4, vec![(0, 1, 0.25), (1, 2, 1.5), (2, 3, 1.5)]).unwrap();
        let text = write_graph(&g, None);
        let parsed = parse_graph(&text).unwrap();
        assert!(parsed.left_count.is_none());
        assert_eq!(parsed.graph.edge_count(), 3);
        for e in 0..3 {
            assert_eq!(parsed.graph.edge(e).key_pair(), g.edge(e).key_pair());
            assert_eq!(parsed.graph.edge(e).w, g.edge(e).w);
        }
    }

    #[test]
    fn unweighted_lines_default_to_unit() {
        let text = "3 2\n0 1\n1 2 2.5\n";
        let parsed = parse_graph(text).unwrap();
        assert_eq!(parsed.graph.edge(0).w, 1.0);
        assert_eq!(parsed.graph.edge(1).w, 2.5);
    }

    #[test]
    fn comments_and_blanks_ignored() {
        let text = "# a triangle\n3 3\n\n0 1 1.0 # first\n1 2 1.0\n0 2 1.0\n";
        assert_eq!(parse_graph(text).unwrap().graph.edge_count(), 3);
    }

    #[test]
    fn bipartite_header_parsed() {
        let text = "4 2\nL 2\n0 2\n1 3\n";
        let parsed = parse_graph(text).unwrap();
        assert_eq!(parsed.left_count, Some(2));
        let back = write_graph(&parsed.graph, parsed.left_count);
        assert_eq!(parse_graph(&back).unwrap().left_count, Some(2));
    }

    #[test]
    fn bipartite_file_feeds_blow_up() {
        use crate::generators::{blow_up, BipartiteGraph};
        let text = "# six-cycle, contiguous sides\n6 6\nL 3\n0 3\n1 3\n1 4\n2 4\n2 5\n0 5\n";
        let parsed = parse_graph(text).unwrap();
        let base = BipartiteGraph::new(parsed.graph, parsed.left_count.unwrap()).unwrap();
        let blown = blow_up(&base, 2, 1).unwrap();
        assert_eq!(blown.graph.node_count(), 3 * 2 + 3);
        assert_eq!(blown.graph.edge_count(), 12);
    }

    #[test]
    fn malformed_inputs_are_parse_errors() {
        assert!(matches!(parse_graph(""), Err(Error::Parse { .. })));
        assert!(matches!(parse_graph("2\n"), Err(Error::Parse { .. })));
        assert!(matches!(
            parse_graph("2 1\n0 x\n"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_graph("2 2\n0 1\n"),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn blocking_round_trip() {
        let g = WeightedGraph::new(4, vec![(0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0)]).unwrap();
        let b: StrongBlockingSet = [Block::new(2, 0).unwrap(), Block::new(1, 2).unwrap()]
            .into_iter()
            .collect();
        let text = write_blocking(&b);
        let parsed = parse_blocking(&text, &g).unwrap();
        assert_eq!(parsed, b);
        assert!(parse_blocking("0 9\n", &g).is_err());
        assert!(parse_blocking("1 1\n", &g).is_err());
    }
}
