//! Weighted problem instances: validation, the text format, standard
//! generators and exhaustive enumeration of small connected graphs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::HashMap;
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GraphError {
    #[error("line {line}: malformed line ({msg})")]
    Malformed { line: usize, msg: String },
    #[error("line {line}: non-positive weight {weight}")]
    NonPositiveWeight { line: usize, weight: f64 },
    #[error("line {line}: self-loop on vertex {vertex}")]
    SelfLoop { line: usize, vertex: usize },
    #[error("line {line}: vertex id {vertex} out of range for n = {n}")]
    VertexOutOfRange { line: usize, vertex: usize, n: usize },
    #[error("missing `n m` header line")]
    MissingHeader,
    #[error("header declares {expected} edges but {found} edge lines follow")]
    EdgeCountMismatch { expected: usize, found: usize },
    #[error("invalid generator parameters: {0}")]
    InvalidParams(String),
}

/// An undirected graph with strictly positive edge weights.
///
/// Edges are stored canonically: endpoints ordered `i < j`, list sorted,
/// duplicates merged by summing weights (the Hamiltonian is a weighted sum,
/// so merging preserves it). Immutable after construction.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedGraph {
    n: usize,
    edges: Vec<(usize, usize, f64)>,
    adj: Vec<Vec<(usize, usize)>>,
}

impl WeightedGraph {
    pub fn new(
        n: usize,
        raw_edges: impl IntoIterator<Item = (usize, usize, f64)>,
    ) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::InvalidParams("vertex count must be positive".into()));
        }
        let mut merged: HashMap<(usize, usize), f64> = HashMap::new();
        for (line, (a, b, w)) in raw_edges.into_iter().enumerate() {
            validate_edge(n, a, b, w, line + 1)?;
            let key = (a.min(b), a.max(b));
            *merged.entry(key).or_insert(0.0) += w;
        }
        let mut edges: Vec<(usize, usize, f64)> =
            merged.into_iter().map(|((i, j), w)| (i, j, w)).collect();
        edges.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));
        Ok(Self::from_canonical(n, edges))
    }

    fn from_canonical(n: usize, edges: Vec<(usize, usize, f64)>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for (e, &(i, j, _)) in edges.iter().enumerate() {
            adj[i].push((j, e));
            adj[j].push((i, e));
        }
        WeightedGraph { n, edges, adj }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Canonical edge list, endpoints `i < j`, ascending.
    pub fn edges(&self) -> &[(usize, usize, f64)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn total_weight(&self) -> f64 {
        self.edges.iter().map(|e| e.2).sum()
    }

    /// Neighbors of `v` as `(other endpoint, edge index)`.
    pub fn neighbors(&self, v: usize) -> &[(usize, usize)] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Parses the text format: `#` comment lines, a `n m` header, then m
    /// lines `i j w`. Vertex ids may be 0-based or 1-based; a file whose ids
    /// reach n (and never 0) is normalized from 1-based.
    pub fn parse(text: &str) -> Result<Self, GraphError> {
        let mut data = text.lines().enumerate().filter_map(|(k, line)| {
            let t = line.trim();
            if t.is_empty() || t.starts_with('#') {
                None
            } else {
                Some((k + 1, t))
            }
        });
        let (hline, header) = data.next().ok_or(GraphError::MissingHeader)?;
        let mut it = header.split_whitespace();
        let n: usize = parse_field(it.next(), hline, "vertex count")?;
        if n == 0 {
            return Err(GraphError::Malformed {
                line: hline,
                msg: "vertex count must be positive".into(),
            });
        }
        let m: usize = parse_field(it.next(), hline, "edge count")?;
        if it.next().is_some() {
            return Err(GraphError::Malformed {
                line: hline,
                msg: "header has trailing fields".into(),
            });
        }
        let mut raw: Vec<(usize, usize, usize, f64)> = Vec::with_capacity(m);
        for (line, t) in data {
            if raw.len() == m {
                return Err(GraphError::EdgeCountMismatch { expected: m, found: m + 1 });
            }
            let mut it = t.split_whitespace();
            let i: usize = parse_field(it.next(), line, "endpoint")?;
            let j: usize = parse_field(it.next(), line, "endpoint")?;
            let w: f64 = parse_field(it.next(), line, "weight")?;
            if it.next().is_some() {
                return Err(GraphError::Malformed { line, msg: "trailing fields".into() });
            }
            raw.push((line, i, j, w));
        }
        if raw.len() != m {
            return Err(GraphError::EdgeCountMismatch { expected: m, found: raw.len() });
        }
        // 1-based files are recognized by an id equal to n with no id 0.
        let one_based = !raw.is_empty()
            && raw.iter().all(|&(_, i, j, _)| i >= 1 && j >= 1)
            && raw.iter().any(|&(_, i, j, _)| i == n || j == n);
        let shift = usize::from(one_based);
        let mut merged: HashMap<(usize, usize), f64> = HashMap::new();
        for &(line, i, j, w) in &raw {
            let (i, j) = (i - shift, j - shift);
            validate_edge(n, i, j, w, line)?;
            *merged.entry((i.min(j), i.max(j))).or_insert(0.0) += w;
        }
        let mut edges: Vec<(usize, usize, f64)> =
            merged.into_iter().map(|((i, j), w)| (i, j, w)).collect();
        edges.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));
        Ok(Self::from_canonical(n, edges))
    }

    /// Canonical serialization; `parse` of the result reproduces the graph.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{} {}", self.n, self.edges.len());
        for &(i, j, w) in &self.edges {
            let _ = writeln!(s, "{i} {j} {w}");
        }
        s
    }

    /// A vertex subset crossed by every edge, or `None` if the graph has an
    /// odd cycle. Isolated vertices land on the first side.
    pub fn bipartition(&self) -> Option<Vec<usize>> {
        let mut color = vec![u8::MAX; self.n];
        for start in 0..self.n {
            if color[start] != u8::MAX {
                continue;
            }
            color[start] = 0;
            let mut queue = vec![start];
            while let Some(v) = queue.pop() {
                for &(u, _) in &self.adj[v] {
                    if color[u] == u8::MAX {
                        color[u] = 1 - color[v];
                        queue.push(u);
                    } else if color[u] == color[v] {
                        return None;
                    }
                }
            }
        }
        Some((0..self.n).filter(|&v| color[v] == 0).collect())
    }

    pub fn is_triangle_free(&self) -> bool {
        let masks: Vec<u128> = (0..self.n)
            .map(|v| {
                self.adj[v]
                    .iter()
                    .fold(0u128, |m, &(u, _)| if u < 128 { m | (1 << u) } else { m })
            })
            .collect();
        if self.n <= 128 {
            return self.edges.iter().all(|&(i, j, _)| masks[i] & masks[j] == 0);
        }
        self.edges.iter().all(|&(i, j, _)| {
            self.adj[i].iter().all(|&(k, _)| !self.adj[j].iter().any(|&(u, _)| u == k))
        })
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &(u, _) in &self.adj[v] {
                if !seen[u] {
                    seen[u] = true;
                    count += 1;
                    stack.push(u);
                }
            }
        }
        count == self.n
    }

    pub fn path(n: usize) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::InvalidParams("path needs n >= 1".into()));
        }
        Self::new(n, (1..n).map(|v| (v - 1, v, 1.0)))
    }

    pub fn cycle(n: usize) -> Result<Self, GraphError> {
        if n < 3 {
            return Err(GraphError::InvalidParams("cycle needs n >= 3".into()));
        }
        Self::new(n, (0..n).map(|v| (v, (v + 1) % n, 1.0)))
    }

    /// Star with `leaves` edges from center vertex 0.
    pub fn star(leaves: usize) -> Result<Self, GraphError> {
        if leaves == 0 {
            return Err(GraphError::InvalidParams("star needs >= 1 leaf".into()));
        }
        Self::new(leaves + 1, (1..=leaves).map(|v| (0, v, 1.0)))
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Result<Self, GraphError> {
        if a == 0 || b == 0 {
            return Err(GraphError::InvalidParams("both sides need >= 1 vertex".into()));
        }
        Self::new(
            a + b,
            (0..a).flat_map(move |i| (0..b).map(move |j| (i, a + j, 1.0))),
        )
    }

    /// G(n, p) with unit weights, deterministic in the seed.
    pub fn random_gnp(n: usize, p: f64, seed: u64) -> Result<Self, GraphError> {
        if n == 0 || !(0.0..=1.0).contains(&p) {
            return Err(GraphError::InvalidParams(format!("bad gnp params n={n} p={p}")));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut edges = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                if rng.gen::<f64>() < p {
                    edges.push((i, j, 1.0));
                }
            }
        }
        Self::new(n, edges)
    }

    /// Connected G(n, p) with weights uniform in `[w_lo, w_hi]`; retries
    /// internally (bumping a derived stream) until connected.
    pub fn random_connected_weighted(
        n: usize,
        p: f64,
        (w_lo, w_hi): (f64, f64),
        seed: u64,
    ) -> Result<Self, GraphError> {
        if n == 0 || !(0.0..=1.0).contains(&p) || !(w_lo > 0.0 && w_hi >= w_lo) {
            return Err(GraphError::InvalidParams(format!(
                "bad params n={n} p={p} w=[{w_lo},{w_hi}]"
            )));
        }
        for attempt in 0u64.. {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(attempt.wrapping_mul(0x9e37)));
            let mut edges = Vec::new();
            for i in 0..n {
                for j in (i + 1)..n {
                    if rng.gen::<f64>() < p {
                        edges.push((i, j, rng.gen_range(w_lo..=w_hi)));
                    }
                }
            }
            let g = Self::new(n, edges)?;
            if g.is_connected() {
                return Ok(g);
            }
        }
        unreachable!()
    }
}

fn validate_edge(n: usize, i: usize, j: usize, w: f64, line: usize) -> Result<(), GraphError> {
    if i >= n {
        return Err(GraphError::VertexOutOfRange { line, vertex: i, n });
    }
    if j >= n {
        return Err(GraphError::VertexOutOfRange { line, vertex: j, n });
    }
    if i == j {
        return Err(GraphError::SelfLoop { line, vertex: i });
    }
    if !(w > 0.0) || !w.is_finite() {
        return Err(GraphError::NonPositiveWeight { line, weight: w });
    }
    Ok(())
}

fn parse_field<T: std::str::FromStr>(
    field: Option<&str>,
    line: usize,
    what: &str,
) -> Result<T, GraphError> {
    field
        .ok_or_else(|| GraphError::Malformed { line, msg: format!("missing {what}") })?
        .parse()
        .map_err(|_| GraphError::Malformed { line, msg: format!("unreadable {what}") })
}

/// All connected unit-weight graphs on exactly `n` labelled vertices, deduped
/// up to isomorphism by minimizing the adjacency bitmask over vertex
/// permutations. Intended for n <= 7.
pub fn connected_graphs_upto_iso(n: usize) -> Vec<WeightedGraph> {
    assert!(n >= 1 && n <= 7, "enumeration is for small n");
    if n == 1 {
        return vec![WeightedGraph::new(1, []).unwrap()];
    }
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
        .collect();
    let pair_index = |i: usize, j: usize| -> usize {
        let (i, j) = (i.min(j), i.max(j));
        pairs.iter().position(|&p| p == (i, j)).unwrap()
    };
    let perms = permutations(n);
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for mask in 0u64..(1 << pairs.len()) {
        let edges: Vec<(usize, usize, f64)> = pairs
            .iter()
            .enumerate()
            .filter(|(k, _)| mask >> k & 1 == 1)
            .map(|(_, &(i, j))| (i, j, 1.0))
            .collect();
        let g = WeightedGraph::new(n, edges).unwrap();
        if !g.is_connected() {
            continue;
        }
        let canon = perms
            .iter()
            .map(|p| {
                let mut m = 0u64;
                for (k, &(i, j)) in pairs.iter().enumerate() {
                    if mask >> k & 1 == 1 {
                        m |= 1 << pair_index(p[i], p[j]);
                    }
                }
                m
            })
            .min()
            .unwrap();
        if seen.insert(canon) {
            out.push(g);
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        let mut next = Vec::new();
        for p in &out {
            for v in 0..n {
                if !p.contains(&v) {
                    let mut q = p.clone();
                    q.push(v);
                    next.push(q);
                }
            }
        }
        out = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_smallest_instance() {
        let g = WeightedGraph::parse("2 1\n0 1 1.0").unwrap();
        assert_eq!(g.n(), 2);
        assert_eq!(g.edges(), &[(0, 1, 1.0)]);
    }

    #[test]
    fn parse_p4() {
        let g = WeightedGraph::parse("4 3\n0 1 1\n1 2 1\n2 3 1").unwrap();
        assert_eq!(g, WeightedGraph::path(4).unwrap());
    }

    #[test]
    fn parse_rejects_bad_weight() {
        let e = WeightedGraph::parse("2 1\n0 1 -1.0").unwrap_err();
        assert_eq!(e, GraphError::NonPositiveWeight { line: 2, weight: -1.0 });
        let e = WeightedGraph::parse("2 1\n0 1 0").unwrap_err();
        assert!(matches!(e, GraphError::NonPositiveWeight { line: 2, .. }));
        let e = WeightedGraph::parse("2 1\n0 1 nope").unwrap_err();
        assert!(matches!(e, GraphError::Malformed { line: 2, .. }));
    }

    #[test]
    fn parse_line_numbers_skip_comments() {
        let e = WeightedGraph::parse("# header\n3 2\n0 1 1\n1 1 1").unwrap_err();
        assert_eq!(e, GraphError::SelfLoop { line: 4, vertex: 1 });
        let e = WeightedGraph::parse("3 1\n0 7 1").unwrap_err();
        assert_eq!(e, GraphError::VertexOutOfRange { line: 2, vertex: 7, n: 3 });
    }

    #[test]
    fn parse_normalizes_one_based_ids() {
        let g = WeightedGraph::parse("# 1-based\n3 2\n1 2 1.5\n2 3 0.5").unwrap();
        assert_eq!(g.edges(), &[(0, 1, 1.5), (1, 2, 0.5)]);
        // ids that never reach n stay 0-based
        let g = WeightedGraph::parse("3 1\n1 2 1.0").unwrap();
        assert_eq!(g.edges(), &[(1, 2, 1.0)]);
    }

    #[test]
    fn duplicate_edges_merge_by_weight_sum() {
        let g = WeightedGraph::parse("2 2\n0 1 1.0\n1 0 0.25").unwrap();
        assert_eq!(g.edges(), &[(0, 1, 1.25)]);
    }

    #[test]
    fn header_edge_count_is_enforced() {
        assert!(matches!(
            WeightedGraph::parse("2 2\n0 1 1.0").unwrap_err(),
            GraphError::EdgeCountMismatch { expected: 2, found: 1 }
        ));
        assert!(matches!(
            WeightedGraph::parse("2 0\n0 1 1.0").unwrap_err(),
            GraphError::EdgeCountMismatch { expected: 0, found: 1 }
        ));
        assert_eq!(WeightedGraph::parse("").unwrap_err(), GraphError::MissingHeader);
    }

    #[test]
    fn bipartition_cases() {
        let p4 = WeightedGraph::path(4).unwrap();
        let side = p4.bipartition().unwrap();
        assert!(side == vec![0, 2] || side == vec![1, 3]);
        assert!(WeightedGraph::cycle(3).unwrap().bipartition().is_none());
        assert_eq!(WeightedGraph::cycle(4).unwrap().bipartition().unwrap(), vec![0, 2]);
    }

    #[test]
    fn triangle_detection() {
        assert!(WeightedGraph::path(4).unwrap().is_triangle_free());
        assert!(!WeightedGraph::cycle(3).unwrap().is_triangle_free());
        assert!(WeightedGraph::cycle(4).unwrap().is_triangle_free());
    }

    #[test]
    fn generators() {
        let c4 = WeightedGraph::cycle(4).unwrap();
        assert_eq!(c4.edges(), &[(0, 1, 1.0), (0, 3, 1.0), (1, 2, 1.0), (2, 3, 1.0)]);
        let star = WeightedGraph::star(3).unwrap();
        assert_eq!(star.degree(0), 3);
        assert_eq!(star.edge_count(), 3);
        let a = WeightedGraph::random_gnp(6, 0.5, 7).unwrap();
        let b = WeightedGraph::random_gnp(6, 0.5, 7).unwrap();
        assert_eq!(a, b);
        assert!(WeightedGraph::star(0).is_err());
        assert!(WeightedGraph::cycle(2).is_err());
        let w = WeightedGraph::random_connected_weighted(5, 0.4, (0.2, 2.0), 3).unwrap();
        assert!(w.is_connected());
        assert!(w.edges().iter().all(|e| e.2 >= 0.2 && e.2 <= 2.0));
    }

    #[test]
    fn enumeration_counts_match_oeis() {
        // connected graphs up to isomorphism: 1, 1, 2, 6, 21 for n = 1..5
        assert_eq!(connected_graphs_upto_iso(1).len(), 1);
        assert_eq!(connected_graphs_upto_iso(2).len(), 1);
        assert_eq!(connected_graphs_upto_iso(3).len(), 2);
        assert_eq!(connected_graphs_upto_iso(4).len(), 6);
        assert_eq!(connected_graphs_upto_iso(5).len(), 21);
    }

    #[test]
    fn bipartition_crosses_every_edge_on_generated_graphs() {
        for seed in 0..20 {
            let g = WeightedGraph::random_gnp(7, 0.4, seed).unwrap();
            if let Some(side) = g.bipartition() {
                let inside = |v: usize| side.contains(&v);
                for &(i, j, _) in g.edges() {
                    assert_ne!(inside(i), inside(j), "seed {seed}");
                }
            }
        }
    }

    proptest! {
        #[test]
        fn parse_serialize_roundtrip(n in 1usize..8, seed in 0u64..500, denom in 1u32..16) {
            let mut g = WeightedGraph::random_gnp(n, 0.5, seed).unwrap();
            // rescale to exercise non-unit weights with exact decimal reprs
            let edges: Vec<_> = g.edges().iter()
                .map(|&(i, j, w)| (i, j, w * f64::from(denom) / 4.0))
                .collect();
            g = WeightedGraph::new(n, edges).unwrap();
            let text = g.to_text();
            prop_assert_eq!(WeightedGraph::parse(&text).unwrap(), g);
        }
    }
}
