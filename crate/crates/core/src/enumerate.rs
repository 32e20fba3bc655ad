//! Isomorphism classes of small graphs.
//!
//! The canonical code of a graph is the smallest upper-triangle adjacency
//! word over all relabellings that respect a colour-refined vertex
//! partition. Classes on `n` vertices are generated from the classes on
//! `n - 1` vertices by adding one vertex with every possible neighbourhood.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::SmallGraph;

/// Largest vertex count for internal enumeration.
pub const MAX_ENUMERATION_VERTICES: usize = 8;

fn code_of(adj: &[u16], order: &[usize]) -> u64 {
    // bit for pair (i, j), i < j, in column order j = 1.., i = 0..j
    let n = order.len();
    let mut code = 0u64;
    for j in 1..n {
        for i in 0..j {
            code = code << 1 | (adj[order[i]] >> order[j] & 1) as u64;
        }
    }
    code
}

/// Ordered partition of the vertices by iterated degree refinement.
fn refined_cells(adj: &[u16]) -> Vec<Vec<usize>> {
    let n = adj.len();
    let mut color: Vec<usize> = vec![0; n];
    loop {
        let mut sigs: Vec<(usize, Vec<usize>, usize)> = (0..n)
            .map(|v| {
                let mut nb: Vec<usize> = (0..n)
                    .filter(|&w| adj[v] >> w & 1 == 1)
                    .map(|w| color[w])
                    .collect();
                nb.sort_unstable();
                (color[v], nb, v)
            })
            .collect();
        sigs.sort();
        let mut next = vec![0; n];
        let mut c = 0;
        for k in 0..n {
            if k > 0 && (sigs[k].0 != sigs[k - 1].0 || sigs[k].1 != sigs[k - 1].1) {
                c += 1;
            }
            next[sigs[k].2] = c;
        }
        let classes_before = color.iter().collect::<BTreeSet<_>>().len();
        let classes_after = c + 1;
        color = next;
        if classes_after == classes_before {
            break;
        }
    }
    let cells = color.iter().max().map_or(0, |&c| c + 1);
    let mut out = vec![Vec::new(); cells];
    for (v, &c) in color.iter().enumerate() {
        out[c].push(v);
    }
    out
}

fn permute_cells(
    adj: &[u16],
    cells: &[Vec<usize>],
    depth: usize,
    order: &mut Vec<usize>,
    best: &mut u64,
) {
    if depth == cells.len() {
        *best = (*best).min(code_of(adj, order));
        return;
    }
    let mut cell = cells[depth].clone();
    heap_permutations(&mut cell, |perm| {
        let base = order.len();
        order.extend_from_slice(perm);
        permute_cells(adj, cells, depth + 1, order, best);
        order.truncate(base);
    });
}

fn heap_permutations<F: FnMut(&[usize])>(items: &mut [usize], mut visit: F) {
    let n = items.len();
    let mut c = vec![0; n];
    visit(items);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                items.swap(0, i);
            } else {
                items.swap(c[i], i);
            }
            visit(items);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

/// Canonical code; equal codes iff isomorphic (for graphs with the same n <= 11).
pub fn canonical_code(g: &SmallGraph) -> u64 {
    assert!(
        g.vertex_count() <= 11,
        "canonical codes fit 11 vertices at most"
    );
    let adj: Vec<u16> = g.masks().iter().map(|&m| m as u16).collect();
    let cells = refined_cells(&adj);
    let mut best = u64::MAX;
    permute_cells(&adj, &cells, 0, &mut Vec::new(), &mut best);
    best
}

pub fn from_code(n: usize, code: u64) -> SmallGraph {
    let total = n * n.saturating_sub(1) / 2;
    let mut edges = Vec::new();
    let mut idx = 0;
    for j in 1..n {
        for i in 0..j {
            if code >> (total - 1 - idx) & 1 == 1 {
                edges.push((i, j));
            }
            idx += 1;
        }
    }
    SmallGraph::from_edges(n, &edges).expect("code decodes to a simple graph")
}

/// One representative per isomorphism class on `n` vertices, ordered by
/// edge count and then canonical code.
pub fn nonisomorphic_graphs(n: usize) -> Result<Vec<SmallGraph>> {
    if n > MAX_ENUMERATION_VERTICES {
        return Err(Error::InvalidArgument(format!(
            "internal enumeration supports at most {MAX_ENUMERATION_VERTICES} vertices; \
             supply a graph6 list instead"
        )));
    }
    let mut classes: BTreeSet<u64> = BTreeSet::from([0]);
    for k in 1..n {
        // extend graphs on k vertices by vertex k
        let mut next = BTreeSet::new();
        for &code in &classes {
            let g = from_code(k, code);
            let edges = g.edge_list();
            for nb in 0u32..(1 << k) {
                let mut e = edges.clone();
                e.extend((0..k).filter(|&i| nb >> i & 1 == 1).map(|i| (i, k)));
                let h = SmallGraph::from_edges(k + 1, &e).expect("valid extension");
                next.insert(canonical_code(&h));
            }
        }
        classes = next;
    }
    if n == 0 {
        return Ok(vec![SmallGraph::empty(0)]);
    }
    let mut graphs: Vec<SmallGraph> = classes.into_iter().map(|c| from_code(n, c)).collect();
    graphs.sort_by_key(|g| (g.edge_count(), canonical_code(g)));
    Ok(graphs)
}
