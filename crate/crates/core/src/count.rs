//! Exact counts of labelled copies of a pattern `F` in a host `G` with
//! per-vertex part constraints.
//!
//! `N(F, G; U_1, ..., U_m)` counts injective homomorphisms `φ: F → G` with
//! `φ(i) ∈ U_{assignment[i]}`. Parts may repeat in the assignment, which
//! gives the repeated-part counts `N(F, G; U_1^{m_1}, ..., U_r^{m_r})`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::SmallGraph;
use crate::lambda::binomial;

/// Pattern size limit for host counting.
pub const MAX_COUNT_PATTERN: usize = 10;

/// Bound on the distinct relabellings enumerated by the symmetrized count (8!).
pub const MAX_LABELLINGS: usize = 40_320;

const NO_PART: u32 = u32::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionSpec {
    /// Disjoint vertex sets of the host (0-based).
    pub parts: Vec<Vec<usize>>,
    /// `assignment[i]` is the part required for pattern vertex `i`.
    pub assignment: Vec<usize>,
}

impl PartitionSpec {
    pub fn new(parts: Vec<Vec<usize>>, assignment: Vec<usize>) -> Self {
        PartitionSpec { parts, assignment }
    }

    /// Every pattern vertex mapped to the whole vertex set.
    pub fn unrestricted(host_vertices: usize, pattern_vertices: usize) -> Self {
        PartitionSpec {
            parts: vec![(0..host_vertices).collect()],
            assignment: vec![0; pattern_vertices],
        }
    }

    /// Part `i` for pattern vertex `i`.
    pub fn one_per_part(parts: Vec<Vec<usize>>) -> Self {
        let assignment = (0..parts.len()).collect();
        PartitionSpec { parts, assignment }
    }

    /// Part sizes `floor(alpha_i * n)` for fractions given as `(num, den)`.
    pub fn sizes_from_fractions(n: usize, alphas: &[BigRational]) -> Vec<usize> {
        alphas
            .iter()
            .map(|a| {
                let x = (a * BigRational::from_integer(BigInt::from(n))).floor();
                x.to_integer().try_into().unwrap_or(0)
            })
            .collect()
    }

    fn membership(&self, host: &SmallGraph) -> Result<Vec<u32>> {
        let mut part_of = vec![NO_PART; host.vertex_count()];
        for (p, part) in self.parts.iter().enumerate() {
            for &v in part {
                if v >= host.vertex_count() {
                    return Err(Error::Partition(format!(
                        "vertex {v} is not in the host (|G| = {})",
                        host.vertex_count()
                    )));
                }
                if part_of[v] != NO_PART {
                    return Err(Error::Partition(format!(
                        "vertex {v} belongs to parts {} and {p}",
                        part_of[v]
                    )));
                }
                part_of[v] = p as u32;
            }
        }
        Ok(part_of)
    }

    fn validate(&self, pattern: &SmallGraph) -> Result<()> {
        if self.assignment.len() != pattern.vertex_count() {
            return Err(Error::Partition(format!(
                "assignment covers {} of {} pattern vertices",
                self.assignment.len(),
                pattern.vertex_count()
            )));
        }
        if let Some(&bad) = self.assignment.iter().find(|&&a| a >= self.parts.len()) {
            return Err(Error::Partition(format!(
                "assignment refers to part {bad}, only {} parts given",
                self.parts.len()
            )));
        }
        Ok(())
    }
}

/// Order in which pattern vertices are placed: highest degree first, then
/// repeatedly the vertex with most already-placed neighbours.
fn search_order(f: &SmallGraph) -> Vec<usize> {
    let m = f.vertex_count();
    let mut placed = vec![false; m];
    let mut order = Vec::with_capacity(m);
    for _ in 0..m {
        let next = (0..m)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| {
                let back = f
                    .neighbors(v)
                    .iter()
                    .filter(|&&w| placed[w as usize])
                    .count();
                (back, f.degree(v), std::cmp::Reverse(v))
            })
            .expect("unplaced vertex remains");
        placed[next] = true;
        order.push(next);
    }
    order
}

struct Search<'a> {
    host: &'a SmallGraph,
    part_of: &'a [u32],
    parts: &'a [Vec<usize>],
    order: Vec<usize>,
    /// For position k, the earlier positions adjacent to order[k].
    back: Vec<Vec<usize>>,
    /// Required part for position k.
    want: Vec<u32>,
}

impl<'a> Search<'a> {
    fn new(
        f: &SmallGraph,
        host: &'a SmallGraph,
        spec: &'a PartitionSpec,
        part_of: &'a [u32],
    ) -> Self {
        let order = search_order(f);
        let pos: Vec<usize> = {
            let mut p = vec![0; order.len()];
            for (k, &v) in order.iter().enumerate() {
                p[v] = k;
            }
            p
        };
        let back = order
            .iter()
            .enumerate()
            .map(|(k, &v)| {
                f.neighbors(v)
                    .iter()
                    .map(|&w| pos[w as usize])
                    .filter(|&p| p < k)
                    .collect()
            })
            .collect();
        let want = order.iter().map(|&v| spec.assignment[v] as u32).collect();
        Search {
            host,
            part_of,
            parts: &spec.parts,
            order,
            back,
            want,
        }
    }

    fn candidates(&self, k: usize, image: &[usize], used: &[bool]) -> Vec<usize> {
        let want = self.want[k];
        let ok = |v: usize| self.part_of[v] == want && !used[v];
        if self.back[k].is_empty() {
            return self.parts[want as usize]
                .iter()
                .copied()
                .filter(|&v| ok(v))
                .collect();
        }
        // intersect neighbour lists, smallest first
        let mut lists: Vec<&[u32]> = self.back[k]
            .iter()
            .map(|&p| self.host.neighbors(image[p]))
            .collect();
        lists.sort_by_key(|l| l.len());
        let mut acc: Vec<u32> = lists[0]
            .iter()
            .copied()
            .filter(|&v| ok(v as usize))
            .collect();
        for l in &lists[1..] {
            acc = intersect_sorted(&acc, l);
            if acc.is_empty() {
                break;
            }
        }
        acc.into_iter().map(|v| v as usize).collect()
    }

    fn extend(&self, k: usize, image: &mut Vec<usize>, used: &mut [bool]) -> u128 {
        let cands = self.candidates(k, image, used);
        if k + 1 == self.order.len() {
            return cands.len() as u128;
        }
        let mut total = 0;
        for v in cands {
            image.push(v);
            used[v] = true;
            total += self.extend(k + 1, image, used);
            used[v] = false;
            image.pop();
        }
        total
    }

    fn run(&self) -> u128 {
        if self.order.is_empty() {
            return 1;
        }
        let n = self.host.vertex_count();
        let first = self.candidates(0, &[], &vec![false; n]);
        if self.order.len() == 1 {
            return first.len() as u128;
        }
        first
            .par_iter()
            .map(|&v| {
                let mut used = vec![false; n];
                used[v] = true;
                let mut image = vec![v];
                self.extend(1, &mut image, &mut used)
            })
            .sum()
    }
}

fn intersect_sorted(a: &[u32], b: &[u32]) -> Vec<u32> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::with_capacity(a.len().min(b.len()));
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// `N(F, G; U_{a(1)}, ..., U_{a(m)})`.
pub fn count_constrained(f: &SmallGraph, g: &SmallGraph, spec: &PartitionSpec) -> Result<u128> {
    if f.vertex_count() > MAX_COUNT_PATTERN {
        return Err(Error::TooManyVertices {
            got: f.vertex_count(),
            limit: MAX_COUNT_PATTERN,
        });
    }
    spec.validate(f)?;
    let part_of = spec.membership(g)?;
    Ok(Search::new(f, g, spec, &part_of).run())
}

/// Distinct rearrangements of `items`, in lexicographic order.
fn distinct_permutations(items: &[usize]) -> Vec<Vec<usize>> {
    let mut cur = items.to_vec();
    cur.sort_unstable();
    let mut out = vec![cur.clone()];
    // next lexicographic permutation
    loop {
        let Some(i) = (0..cur.len().saturating_sub(1))
            .rev()
            .find(|&i| cur[i] < cur[i + 1])
        else {
            return out;
        };
        let j = (i + 1..cur.len()).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
        out.push(cur.clone());
    }
}

fn multinomial_orbit_size(items: &[usize]) -> BigInt {
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for &x in items {
        *counts.entry(x).or_default() += 1;
    }
    let mut left = items.len();
    let mut acc = BigInt::from(1);
    for &c in counts.values() {
        acc *= binomial(left, c);
        left -= c;
    }
    acc
}

/// `Ñ`: the average of the constrained count over all relabellings of `F`.
/// Relabellings that give the same assignment are counted once with weight.
pub fn count_symmetrized(
    f: &SmallGraph,
    g: &SmallGraph,
    spec: &PartitionSpec,
) -> Result<BigRational> {
    spec.validate(f)?;
    let orbit = multinomial_orbit_size(&spec.assignment);
    if orbit > BigInt::from(MAX_LABELLINGS) {
        return Err(Error::InvalidArgument(format!(
            "{orbit} distinct labellings exceed the limit of {MAX_LABELLINGS}"
        )));
    }
    let mut total = BigInt::zero();
    for assignment in distinct_permutations(&spec.assignment) {
        let s = PartitionSpec {
            parts: spec.parts.clone(),
            assignment,
        };
        total += BigInt::from(count_constrained(f, g, &s)?);
    }
    Ok(BigRational::new(total, orbit))
}

/// Sum of `Ñ(F, G; U_{i_1}, ..., U_{i_m})` over all `i_1 < ... < i_m`.
pub fn count_summed(f: &SmallGraph, g: &SmallGraph, parts: &[Vec<usize>]) -> Result<BigRational> {
    let m = f.vertex_count();
    let r = parts.len();
    if r < m {
        return Err(Error::Partition(format!(
            "summed count needs at least {m} parts, got {r}"
        )));
    }
    let mut total = BigRational::zero();
    for subset in k_subsets(r, m) {
        let chosen: Vec<Vec<usize>> = subset.iter().map(|&i| parts[i].clone()).collect();
        total += count_symmetrized(f, g, &PartitionSpec::one_per_part(chosen))?;
    }
    Ok(total)
}

fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Pattern-vertex assignment with part `i` repeated `mults[i]` times.
fn repeated_assignment(mults: &[usize]) -> Vec<usize> {
    mults
        .iter()
        .enumerate()
        .flat_map(|(i, &c)| std::iter::repeat_n(i, c))
        .collect()
}

/// `Ñ(F, G; U_1^{m_1}, ..., U_r^{m_r})`.
pub fn count_repeated(
    f: &SmallGraph,
    g: &SmallGraph,
    parts: &[Vec<usize>],
    mults: &[usize],
) -> Result<BigRational> {
    check_mults(f, parts, mults)?;
    let spec = PartitionSpec::new(parts.to_vec(), repeated_assignment(mults));
    count_symmetrized(f, g, &spec)
}

fn check_mults(f: &SmallGraph, parts: &[Vec<usize>], mults: &[usize]) -> Result<()> {
    if mults.len() != parts.len() {
        return Err(Error::Partition(format!(
            "{} multiplicities for {} parts",
            mults.len(),
            parts.len()
        )));
    }
    let sum: usize = mults.iter().sum();
    if sum != f.vertex_count() {
        return Err(Error::Partition(format!(
            "multiplicities sum to {sum}, the pattern has {} vertices",
            f.vertex_count()
        )));
    }
    Ok(())
}

/// Average of `Ñ(F, G; U_1^{m_π(1)}, ..., U_r^{m_π(r)})` over the distinct
/// rearrangements `π` of the multiplicity vector.
pub fn count_multiplicity_averaged(
    f: &SmallGraph,
    g: &SmallGraph,
    parts: &[Vec<usize>],
    mults: &[usize],
) -> Result<BigRational> {
    check_mults(f, parts, mults)?;
    let perms = distinct_permutations(mults);
    let n = perms.len();
    let mut total = BigRational::zero();
    for p in perms {
        total += count_repeated(f, g, parts, &p)?;
    }
    Ok(total / BigRational::from_integer(BigInt::from(n)))
}
