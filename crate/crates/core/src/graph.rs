//! Simple undirected graphs: pattern graphs `F` and host graphs `G`.
//!
//! Every graph keeps sorted adjacency lists. Graphs with at most 64
//! vertices additionally carry one neighbour bit-mask per vertex, which is
//! what the subset statistics and the graph6 codec work with.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

/// Largest pattern the subset-polynomial pipeline accepts (2^m subsets).
pub const MAX_PATTERN_VERTICES: usize = 20;

/// Largest vertex count of the short graph6 form.
pub const MAX_GRAPH6_VERTICES: usize = 62;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SmallGraph {
    n: usize,
    adj: Vec<Vec<u32>>,
    masks: Vec<u64>,
    edges: usize,
}

impl fmt::Debug for SmallGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SmallGraph(n={}, edges={:?})", self.n, self.edge_list())
    }
}

impl SmallGraph {
    /// Builds a graph from 0-based edges. Rejects loops, duplicates and
    /// out-of-range endpoints.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::InvalidArgument(format!(
                    "edge ({a}, {b}) out of range for {n} vertices"
                )));
            }
            if a == b {
                return Err(Error::InvalidArgument(format!("self-loop at vertex {a}")));
            }
            adj[a].push(b as u32);
            adj[b].push(a as u32);
        }
        for (v, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            let before = list.len();
            list.dedup();
            if list.len() != before {
                return Err(Error::InvalidArgument(format!(
                    "duplicate edge at vertex {v}"
                )));
            }
        }
        Ok(Self::from_sorted_adjacency(adj))
    }

    fn from_sorted_adjacency(adj: Vec<Vec<u32>>) -> Self {
        let n = adj.len();
        let masks = if n <= 64 {
            adj.iter()
                .map(|l| l.iter().fold(0u64, |m, &j| m | (1u64 << j)))
                .collect()
        } else {
            Vec::new()
        };
        let edges = adj.iter().map(Vec::len).sum::<usize>() / 2;
        SmallGraph {
            n,
            adj,
            masks,
            edges,
        }
    }

    pub fn empty(n: usize) -> Self {
        Self::from_sorted_adjacency(vec![Vec::new(); n])
    }

    pub fn complete(n: usize) -> Self {
        let adj = (0..n)
            .map(|i| (0..n as u32).filter(|&j| j as usize != i).collect())
            .collect();
        Self::from_sorted_adjacency(adj)
    }

    /// The path on `n` vertices (n - 1 edges).
    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_edges(n, &edges).expect("path edges are valid")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycles need at least 3 vertices");
        let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        edges.push((n - 1, 0));
        Self::from_edges(n, &edges).expect("cycle edges are valid")
    }

    /// The star K_{1,leaves}, centre at vertex 0.
    pub fn star(leaves: usize) -> Self {
        let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
        Self::from_edges(leaves + 1, &edges).expect("star edges are valid")
    }

    /// K_{a,b}; the first `a` vertices form one side.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let mut edges = Vec::with_capacity(a * b);
        for i in 0..a {
            for j in 0..b {
                edges.push((i, a + j));
            }
        }
        Self::from_edges(a + b, &edges).expect("bipartite edges are valid")
    }

    pub fn disjoint_union(&self, other: &SmallGraph) -> SmallGraph {
        let shift = self.n as u32;
        let mut adj = self.adj.clone();
        adj.extend(
            other
                .adj
                .iter()
                .map(|l| l.iter().map(|&j| j + shift).collect::<Vec<_>>()),
        );
        Self::from_sorted_adjacency(adj)
    }

    /// Appends `k` isolated vertices.
    pub fn with_isolated(&self, k: usize) -> SmallGraph {
        self.disjoint_union(&SmallGraph::empty(k))
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        if !self.masks.is_empty() {
            return self.masks[a] >> b & 1 == 1;
        }
        self.adj[a].binary_search(&(b as u32)).is_ok()
    }

    /// Neighbour bit-masks; empty for graphs with more than 64 vertices.
    pub fn masks(&self) -> &[u64] {
        &self.masks
    }

    /// Edges as 0-based pairs `(i, j)` with `i < j`, lexicographically sorted.
    pub fn edge_list(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edges);
        for (i, l) in self.adj.iter().enumerate() {
            for &j in l {
                if i < j as usize {
                    out.push((i, j as usize));
                }
            }
        }
        out
    }

    /// Connected components, each a sorted vertex list, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut comps = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut stack = vec![start];
            let mut comp = Vec::new();
            while let Some(v) = stack.pop() {
                comp.push(v);
                for &w in &self.adj[v] {
                    if !seen[w as usize] {
                        seen[w as usize] = true;
                        stack.push(w as usize);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    /// Induced subgraph on `vertices`, relabelled in the given order.
    pub fn induced(&self, vertices: &[usize]) -> SmallGraph {
        let mut index = vec![u32::MAX; self.n];
        for (new, &old) in vertices.iter().enumerate() {
            index[old] = new as u32;
        }
        let adj = vertices
            .iter()
            .map(|&old| {
                let mut l: Vec<u32> = self.adj[old]
                    .iter()
                    .map(|&j| index[j as usize])
                    .filter(|&j| j != u32::MAX)
                    .collect();
                l.sort_unstable();
                l
            })
            .collect();
        Self::from_sorted_adjacency(adj)
    }

    /// Relabels vertices: vertex `v` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> SmallGraph {
        let edges: Vec<_> = self
            .edge_list()
            .into_iter()
            .map(|(a, b)| (perm[a], perm[b]))
            .collect();
        SmallGraph::from_edges(self.n, &edges).expect("permutation preserves validity")
    }

    pub fn to_graph6(&self) -> Result<String> {
        if self.n > MAX_GRAPH6_VERTICES {
            return Err(Error::InvalidArgument(format!(
                "graph6 short form holds at most {MAX_GRAPH6_VERTICES} vertices, got {}",
                self.n
            )));
        }
        let mut out = String::new();
        out.push((self.n as u8 + 63) as char);
        let mut acc = 0u8;
        let mut filled = 0;
        for j in 1..self.n {
            for i in 0..j {
                acc = acc << 1 | self.has_edge(i, j) as u8;
                filled += 1;
                if filled == 6 {
                    out.push((acc + 63) as char);
                    acc = 0;
                    filled = 0;
                }
            }
        }
        if filled > 0 {
            out.push(((acc << (6 - filled)) + 63) as char);
        }
        Ok(out)
    }
}

/// Parses the short (n <= 62) graph6 form. Surrounding whitespace and an
/// optional `>>graph6<<` header are ignored.
pub fn parse_graph6(text: &str) -> Result<SmallGraph> {
    let trimmed = text.trim();
    let body = trimmed.strip_prefix(">>graph6<<").unwrap_or(trimmed);
    let bytes = body.as_bytes();
    let err = |offset: usize, reason: &str| Error::Graph6 {
        offset,
        reason: reason.to_string(),
    };
    let Some(&first) = bytes.first() else {
        return Err(err(0, "empty input"));
    };
    if first == 126 {
        return Err(err(0, "long form (n > 62) is not supported"));
    }
    if !(63..126).contains(&first) {
        return Err(err(0, "header byte outside 63..=125"));
    }
    let n = (first - 63) as usize;
    let bits = n * n.saturating_sub(1) / 2;
    let need = bits.div_ceil(6);
    if bytes.len() < 1 + need {
        return Err(err(bytes.len(), "truncated bit payload"));
    }
    if bytes.len() > 1 + need {
        return Err(err(1 + need, "trailing bytes after payload"));
    }
    let mut payload = Vec::with_capacity(need);
    for (k, &b) in bytes[1..].iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(err(k + 1, "payload byte outside 63..=126"));
        }
        payload.push(b - 63);
    }
    let bit = |idx: usize| payload[idx / 6] >> (5 - idx % 6) & 1 == 1;
    if !bits.is_multiple_of(6) {
        let last = need - 1;
        let pad = 6 - bits % 6;
        if payload[last] & ((1u8 << pad) - 1) != 0 {
            return Err(err(last + 1, "nonzero padding bits"));
        }
    }
    let mut edges = Vec::new();
    let mut idx = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(idx) {
                edges.push((i, j));
            }
            idx += 1;
        }
    }
    SmallGraph::from_edges(n, &edges)
}

/// Parses `u v` lines with 1-based labels. A first line `n m` is read as a
/// header when exactly `m` edge lines follow and every label fits in `n`;
/// otherwise the vertex count is the largest label seen. Blank lines and
/// lines starting with `#` are skipped.
pub fn parse_edge_list(text: &str) -> Result<SmallGraph> {
    let mut rows = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(Error::EdgeList {
                line: lineno + 1,
                reason: format!("expected two integers, found {} fields", fields.len()),
            });
        }
        let parse = |s: &str| {
            s.parse::<usize>().map_err(|_| Error::EdgeList {
                line: lineno + 1,
                reason: format!("'{s}' is not a non-negative integer"),
            })
        };
        rows.push((lineno + 1, parse(fields[0])?, parse(fields[1])?));
    }
    let header = match rows.first() {
        Some(&(_, n, m)) if m == rows.len() - 1 => rows[1..]
            .iter()
            .all(|&(_, a, b)| a <= n && b <= n)
            .then_some(n),
        _ => None,
    };
    let (n, body) = match header {
        Some(n) => (n, &rows[1..]),
        None => {
            let n = rows.iter().map(|&(_, a, b)| a.max(b)).max().unwrap_or(0);
            (n, &rows[..])
        }
    };
    let mut seen = std::collections::HashSet::new();
    let mut edges = Vec::with_capacity(body.len());
    for &(line, a, b) in body {
        if a == 0 || b == 0 || a > n || b > n {
            return Err(Error::EdgeList {
                line,
                reason: format!("label out of range 1..={n}"),
            });
        }
        if a == b {
            return Err(Error::EdgeList {
                line,
                reason: "self-loop".into(),
            });
        }
        if !seen.insert((a.min(b), a.max(b))) {
            return Err(Error::EdgeList {
                line,
                reason: format!("duplicate edge {a} {b}"),
            });
        }
        edges.push((a - 1, b - 1));
    }
    SmallGraph::from_edges(n, &edges)
}

/// Accepts either graph6 or an edge list; graph6 is tried when the text is a
/// single token.
pub fn parse_graph(text: &str) -> Result<SmallGraph> {
    let trimmed = text.trim();
    if !trimmed.is_empty() && trimmed.split_whitespace().count() == 1 {
        parse_graph6(trimmed)
    } else {
        parse_edge_list(text)
    }
}

/// Drops vertices of degree zero and relabels the rest contiguously,
/// preserving their relative order.
pub fn strip_isolated(f: &SmallGraph) -> SmallGraph {
    let keep: Vec<usize> = (0..f.n).filter(|&v| f.degree(v) > 0).collect();
    f.induced(&keep)
}

/// Edge counts `(e(A), e(A^c), e(A, A^c))` for the vertex set encoded by `a`.
pub fn subset_stats(f: &SmallGraph, a: u64) -> (u32, u32, u32) {
    let masks = f.masks();
    assert!(
        f.vertex_count() <= 64,
        "subset statistics need the bit-mask representation"
    );
    let full = if f.n == 64 {
        u64::MAX
    } else {
        (1u64 << f.n) - 1
    };
    let inside = a & full;
    let comp = !a & full;
    let (mut twice_in, mut twice_comp) = (0u32, 0u32);
    for (v, &m) in masks.iter().enumerate() {
        if inside >> v & 1 == 1 {
            twice_in += (m & inside).count_ones();
        } else {
            twice_comp += (m & comp).count_ones();
        }
    }
    let e_in = twice_in / 2;
    let e_comp = twice_comp / 2;
    (e_in, e_comp, f.edges as u32 - e_in - e_comp)
}

/// Exponent triple `(e(A), e(A^c), e(A, A^c))`.
pub type Triple = (u32, u32, u32);

/// All 2^m subset triples, grouped by |A| as multiplicity maps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsetProfile {
    pub m: usize,
    pub edges: u32,
    pub levels: Vec<BTreeMap<Triple, u64>>,
}

impl SubsetProfile {
    pub fn level_size(&self, k: usize) -> u64 {
        self.levels[k].values().sum()
    }
}

pub fn subset_profile(f: &SmallGraph) -> Result<SubsetProfile> {
    let m = f.vertex_count();
    if m > MAX_PATTERN_VERTICES {
        return Err(Error::TooManyVertices {
            got: m,
            limit: MAX_PATTERN_VERTICES,
        });
    }
    let masks = f.masks();
    let total = 1usize << m;
    // inner[A] = e(A), built by peeling off the lowest vertex of A.
    let mut inner = vec![0u16; total];
    for a in 1..total {
        let low = a.trailing_zeros() as usize;
        let rest = a & (a - 1);
        inner[a] = inner[rest] + (masks[low] & rest as u64).count_ones() as u16;
    }
    let e = f.edge_count() as u32;
    let mut levels = vec![BTreeMap::new(); m + 1];
    for a in 0..total {
        let e_in = inner[a] as u32;
        let e_comp = inner[(total - 1) ^ a] as u32;
        let triple = (e_in, e_comp, e - e_in - e_comp);
        *levels[a.count_ones() as usize].entry(triple).or_insert(0) += 1;
    }
    Ok(SubsetProfile {
        m,
        edges: e,
        levels,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub enum StructureKind {
    Empty,
    SingleEdge,
    DisconnectedNontrivial,
    Regular(usize),
    Star,
    General,
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct StructureClass {
    pub kind: StructureKind,
    pub components: Vec<Vec<usize>>,
}

/// Fast-path classification. Priority: empty, single edge, two or more
/// nontrivial components, regular (m >= 3), star (m >= 3), general.
pub fn classify(f: &SmallGraph) -> StructureClass {
    let components = f.components();
    let m = f.vertex_count();
    let degrees = f.degrees();
    let kind = if f.edge_count() == 0 {
        StructureKind::Empty
    } else if f.edge_count() == 1 {
        StructureKind::SingleEdge
    } else if components.iter().filter(|c| c.len() >= 2).count() >= 2 {
        StructureKind::DisconnectedNontrivial
    } else if m >= 3 && degrees.iter().all(|&d| d == degrees[0]) {
        StructureKind::Regular(degrees[0])
    } else if m >= 3 && f.edge_count() == m - 1 && degrees.contains(&(m - 1)) {
        StructureKind::Star
    } else {
        StructureKind::General
    };
    StructureClass { kind, components }
}
