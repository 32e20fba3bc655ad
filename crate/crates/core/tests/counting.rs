use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;
use qrcert::count::{
    count_constrained, count_multiplicity_averaged, count_repeated, count_summed,
    count_symmetrized, PartitionSpec,
};
use qrcert::empirical::{qr_experiment, Generator};
use qrcert::graph::SmallGraph;
use qrcert::poly::{rat, rat_int};

/// Injective maps respecting `spec` that send edges to edges, by exhaustion.
fn naive_count(f: &SmallGraph, g: &SmallGraph, spec: &PartitionSpec) -> u128 {
    fn rec(
        i: usize,
        f: &SmallGraph,
        g: &SmallGraph,
        spec: &PartitionSpec,
        img: &mut Vec<usize>,
    ) -> u128 {
        if i == f.vertex_count() {
            let ok = f
                .edge_list()
                .iter()
                .all(|&(a, b)| g.has_edge(img[a], img[b]));
            return ok as u128;
        }
        let mut total = 0;
        for &v in &spec.parts[spec.assignment[i]] {
            if !img.contains(&v) {
                img.push(v);
                total += rec(i + 1, f, g, spec, img);
                img.pop();
            }
        }
        total
    }
    rec(0, f, g, spec, &mut Vec::new())
}

fn graph_from_bits(n: usize, bits: &[bool]) -> SmallGraph {
    let pairs = (0..n).flat_map(|j| (0..j).map(move |i| (i, j)));
    let edges: Vec<_> = pairs
        .zip(bits)
        .filter_map(|(p, &b)| b.then_some(p))
        .collect();
    SmallGraph::from_edges(n, &edges).unwrap()
}

fn arb_graph(min_n: usize, max_n: usize) -> impl Strategy<Value = SmallGraph> {
    (min_n..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2)
            .prop_map(move |b| graph_from_bits(n, &b))
    })
}

/// Vertex `v` goes to part `labels[v]`, or to no part when the label is `r` or more.
fn parts_from_labels(labels: &[usize], r: usize) -> Vec<Vec<usize>> {
    let mut parts = vec![Vec::new(); r];
    for (v, &l) in labels.iter().enumerate() {
        if l < r {
            parts[l].push(v);
        }
    }
    parts
}

fn binom(n: usize, k: usize) -> BigRational {
    (0..k).fold(BigRational::one(), |acc, i| {
        acc * rat((n - i) as i64, (i + 1) as i64)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn constrained_count_matches_brute_force(
        f in arb_graph(1, 4),
        g in arb_graph(1, 9),
        labels in proptest::collection::vec(0usize..4, 9),
        assign in proptest::collection::vec(0usize..3, 4),
    ) {
        let r = 3;
        let parts = parts_from_labels(&labels[..g.vertex_count()], r);
        let spec = PartitionSpec::new(parts, assign[..f.vertex_count()].to_vec());
        prop_assert_eq!(count_constrained(&f, &g, &spec).unwrap(), naive_count(&f, &g, &spec));
    }

    #[test]
    fn symmetrized_count_lies_between_extremes(
        f in arb_graph(2, 4),
        g in arb_graph(4, 9),
        labels in proptest::collection::vec(0usize..4, 9),
    ) {
        let m = f.vertex_count();
        let parts = parts_from_labels(&labels[..g.vertex_count()], m);
        let spec = PartitionSpec::one_per_part(parts.clone());
        let sym = count_symmetrized(&f, &g, &spec).unwrap();
        let mut perms = vec![(0..m).collect::<Vec<_>>()];
        for k in 1..m {
            perms = perms.into_iter().flat_map(|p| (0..=k).map(move |i| {
                let mut q = p.clone();
                q.swap(i, k);
                q
            })).collect();
        }
        let counts: Vec<u128> = perms
            .iter()
            .map(|p| naive_count(&f, &g, &PartitionSpec::new(parts.clone(), p.clone())))
            .collect();
        let lo = rat_int(*counts.iter().min().unwrap() as i64);
        let hi = rat_int(*counts.iter().max().unwrap() as i64);
        prop_assert!(lo <= sym && sym <= hi);
        let mean = BigRational::new(BigInt::from(counts.iter().sum::<u128>()), BigInt::from(counts.len()));
        prop_assert_eq!(sym, mean);
    }

    #[test]
    fn adding_host_edges_never_lowers_counts(
        f in arb_graph(2, 4),
        g in arb_graph(4, 8),
        extra in (0usize..8, 0usize..8),
    ) {
        let (a, b) = (extra.0 % g.vertex_count(), extra.1 % g.vertex_count());
        prop_assume!(a != b && !g.has_edge(a, b));
        let mut edges = g.edge_list();
        edges.push((a, b));
        let bigger = SmallGraph::from_edges(g.vertex_count(), &edges).unwrap();
        let spec = PartitionSpec::unrestricted(g.vertex_count(), f.vertex_count());
        prop_assert!(count_constrained(&f, &g, &spec).unwrap() <= count_constrained(&f, &bigger, &spec).unwrap());
    }
}

#[test]
fn single_edge_counts_twice_the_edges() {
    for g in [
        SmallGraph::path(6),
        SmallGraph::complete(5),
        SmallGraph::cycle(7),
        SmallGraph::empty(4),
    ] {
        let spec = PartitionSpec::unrestricted(g.vertex_count(), 2);
        assert_eq!(
            count_constrained(&SmallGraph::complete(2), &g, &spec).unwrap(),
            2 * g.edge_count() as u128
        );
    }
}

#[test]
fn multicut_of_a_cycle() {
    // C6 with parts {0,1} {2,3} {4,5}: P3 placed across three parts in order
    let g = SmallGraph::cycle(6);
    let parts = vec![vec![0, 1], vec![2, 3], vec![4, 5]];
    let spec = PartitionSpec::one_per_part(parts.clone());
    assert_eq!(
        count_constrained(&SmallGraph::path(3), &g, &spec).unwrap(),
        naive_count(&SmallGraph::path(3), &g, &spec)
    );
    // a middle vertex in {2,3} never sees both outer parts
    assert_eq!(
        count_constrained(&SmallGraph::path(3), &g, &spec).unwrap(),
        0
    );
    let k2 = SmallGraph::complete(2);
    let pair = PartitionSpec::one_per_part(vec![parts[0].clone(), parts[1].clone()]);
    assert_eq!(count_constrained(&k2, &g, &pair).unwrap(), 1);
    assert_eq!(count_symmetrized(&k2, &g, &pair).unwrap(), rat(1, 1));
    assert_eq!(count_summed(&k2, &g, &parts).unwrap(), rat_int(3));
}

#[test]
fn summed_count_equals_padded_symmetrized_count() {
    // each part has t vertices; padding F with r - m isolated vertices
    // multiplies every term by t^{r-m}
    let g = SmallGraph::from_edges(
        10,
        &[
            (0, 2),
            (0, 4),
            (1, 3),
            (1, 6),
            (2, 5),
            (2, 8),
            (3, 9),
            (4, 7),
            (5, 9),
            (6, 8),
            (7, 9),
            (0, 9),
            (3, 4),
        ],
    )
    .unwrap();
    let t = 2;
    let r = 5;
    let parts: Vec<Vec<usize>> = (0..r).map(|i| vec![2 * i, 2 * i + 1]).collect();
    for f in [
        SmallGraph::complete(2),
        SmallGraph::path(3),
        SmallGraph::complete(3),
    ] {
        let m = f.vertex_count();
        let summed = count_summed(&f, &g, &parts).unwrap();
        let padded = count_symmetrized(
            &f.with_isolated(r - m),
            &g,
            &PartitionSpec::one_per_part(parts.clone()),
        )
        .unwrap();
        let scale = binom(r, m) / rat_int(num_traits::pow(t, r - m));
        assert_eq!(summed, scale * padded, "{:?}", f.edge_list());
    }
}

#[test]
fn zero_multiplicities_average_the_summed_count() {
    let g = SmallGraph::complete(4).disjoint_union(&SmallGraph::cycle(5));
    let parts = vec![vec![0, 4], vec![1, 5, 6], vec![2, 7], vec![3, 8]];
    for f in [SmallGraph::complete(2), SmallGraph::path(3)] {
        let m = f.vertex_count();
        let mut mults = vec![1; m];
        mults.resize(parts.len(), 0);
        let avg = count_multiplicity_averaged(&f, &g, &parts, &mults).unwrap();
        assert_eq!(
            avg,
            count_summed(&f, &g, &parts).unwrap() / binom(parts.len(), m)
        );
    }
}

#[test]
fn one_part_gives_the_plain_count() {
    let g = SmallGraph::complete(4).disjoint_union(&SmallGraph::path(4));
    let part: Vec<usize> = vec![0, 1, 2, 4, 5, 6];
    let induced = g.induced(&part);
    for f in [
        SmallGraph::complete(2),
        SmallGraph::complete(3),
        SmallGraph::path(3),
    ] {
        let m = f.vertex_count();
        let n =
            count_constrained(&f, &induced, &PartitionSpec::unrestricted(part.len(), m)).unwrap();
        assert_eq!(
            count_repeated(&f, &g, std::slice::from_ref(&part), &[m]).unwrap(),
            rat_int(n as i64)
        );
    }
}

#[test]
fn triangle_with_multiplicities_two_and_one() {
    let g = SmallGraph::complete(5).disjoint_union(&SmallGraph::cycle(4));
    let parts = vec![vec![0, 1, 5, 6], vec![2, 3, 7]];
    let k3 = SmallGraph::complete(3);
    let brute = naive_count(&k3, &g, &PartitionSpec::new(parts.clone(), vec![0, 0, 1]));
    // 0,1 in part 0 and 2,3 in part 1 give 2 * 2 maps; the cycle has no triangles
    assert_eq!(brute, 4);
    assert_eq!(
        count_repeated(&k3, &g, &parts, &[2, 1]).unwrap(),
        rat_int(4)
    );
    // swapping the multiplicities uses 2,3 from part 1 and 0 or 1 from part 0
    assert_eq!(
        count_multiplicity_averaged(&k3, &g, &parts, &[2, 1]).unwrap(),
        rat_int(4)
    );
}

#[test]
fn invalid_specifications_are_rejected() {
    let g = SmallGraph::complete(4);
    let k2 = SmallGraph::complete(2);
    assert!(count_constrained(&k2, &g, &PartitionSpec::new(vec![vec![0, 9]], vec![0, 0])).is_err());
    assert!(count_constrained(
        &k2,
        &g,
        &PartitionSpec::new(vec![vec![0, 1], vec![1, 2]], vec![0, 1])
    )
    .is_err());
    assert!(count_constrained(&k2, &g, &PartitionSpec::new(vec![vec![0, 1]], vec![0, 1])).is_err());
    assert!(count_repeated(&k2, &g, &[vec![0], vec![1]], &[1, 2]).is_err());
    assert!(count_summed(&SmallGraph::complete(3), &g, &[vec![0], vec![1]]).is_err());
}

#[test]
fn normalized_deviation_shrinks_with_n() {
    let alphas = |m: usize| vec![rat(1, m as i64 + 1); m];
    for f in [
        SmallGraph::complete(2),
        SmallGraph::path(3),
        SmallGraph::complete(3),
    ] {
        let m = f.vertex_count();
        let dev = |n: usize| {
            let gen = Generator::Gnp { n, p: rat(1, 2) };
            qr_experiment(&f, &gen, &alphas(m), 6, 11)
                .unwrap()
                .mean_normalized_deviation
        };
        let (small, large) = (dev(12), dev(96));
        assert!(large < small, "{:?}: {small} -> {large}", f.edge_list());
        assert!(!large.is_zero() || m == 2);
    }
}
