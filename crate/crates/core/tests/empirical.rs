use num_rational::BigRational;
use num_traits::Zero;
use qrcert::empirical::{
    gen_gnp, gen_two_type, qr_experiment, two_type_partition_integral, two_type_psi, Allocation,
    Generator, TwoTypeGraphon,
};
use qrcert::graph::SmallGraph;
use qrcert::poly::{parse_rational, rat, rat_int};

fn graphon(u: (i64, i64), v: (i64, i64), s: (i64, i64)) -> TwoTypeGraphon {
    TwoTypeGraphon::new(rat(u.0, u.1), rat(v.0, v.1), rat(s.0, s.1)).unwrap()
}

#[test]
fn gnp_is_deterministic_and_concentrated() {
    let p = rat(3, 10);
    let n = 200;
    let pairs = (n * (n - 1) / 2) as f64;
    for seed in [1, 2, 3, 4, 5] {
        let g = gen_gnp(n, &p, seed).unwrap();
        assert_eq!(g, gen_gnp(n, &p, seed).unwrap());
        let e = g.edge_count() as f64;
        assert!(
            (e - 0.3 * pairs).abs() <= 4.0 * pairs.sqrt(),
            "seed {seed}: {e} edges"
        );
    }
    assert_ne!(gen_gnp(n, &p, 1).unwrap(), gen_gnp(n, &p, 2).unwrap());
    assert_eq!(
        gen_gnp(8, &rat(1, 3), 42).unwrap().to_graph6().unwrap(),
        "G?Qs|o"
    );
}

#[test]
fn gnp_extremes() {
    assert_eq!(gen_gnp(30, &rat_int(0), 9).unwrap().edge_count(), 0);
    assert_eq!(
        gen_gnp(30, &rat_int(1), 9).unwrap(),
        SmallGraph::complete(30)
    );
    assert!(gen_gnp(5, &rat(3, 2), 0).is_err());
}

#[test]
fn two_type_shapes() {
    // u = 1, v = 0, s = 0: a clique on the high half and nothing else
    let g = gen_two_type(40, &graphon((1, 1), (0, 1), (0, 1)), 3).unwrap();
    let comps: Vec<usize> = g
        .components()
        .iter()
        .map(Vec::len)
        .filter(|&c| c > 1)
        .collect();
    assert_eq!(comps.len(), 1);
    let k = comps[0];
    assert_eq!(g.edge_count(), k * (k - 1) / 2);

    // u = v = 0, s = 1: complete bipartite, hence no triangles
    let g = gen_two_type(40, &graphon((0, 1), (0, 1), (1, 1)), 3).unwrap();
    let spec = qrcert::count::PartitionSpec::unrestricted(40, 3);
    assert_eq!(
        qrcert::count::count_constrained(&SmallGraph::complete(3), &g, &spec).unwrap(),
        0
    );
    let degs = g.degrees();
    assert!(degs.iter().all(|&d| d > 0));

    // the constant graphon reproduces G(n, p) exactly
    let c = TwoTypeGraphon::constant(rat(2, 5)).unwrap();
    assert!(c.is_constant());
    assert_eq!(
        gen_two_type(50, &c, 77).unwrap(),
        gen_gnp(50, &rat(2, 5), 77).unwrap()
    );
}

#[test]
fn graphon_validation() {
    assert!(TwoTypeGraphon::new(rat(-1, 2), rat_int(0), rat_int(0)).is_err());
    assert!(TwoTypeGraphon::new(rat_int(0), rat(3, 2), rat_int(0)).is_err());
    let w = graphon((9, 10), (1, 10), (1, 2));
    assert_eq!(w.value(&rat(1, 4), &rat(1, 3)).unwrap(), rat(1, 10));
    assert_eq!(w.value(&rat(1, 4), &rat(3, 4)).unwrap(), rat(1, 2));
    assert_eq!(w.value(&rat(3, 4), &rat(4, 5)).unwrap(), rat(9, 10));
    assert!(w.value(&rat(1, 2), &rat(1, 4)).is_err());
    assert_eq!(w.density(), rat(1, 2));
}

#[test]
fn psi_and_partition_integrals() {
    let k2 = SmallGraph::complete(2);
    let w = graphon((9, 10), (1, 10), (1, 2));
    assert_eq!(
        two_type_psi(&k2, &w, &[rat(1, 4), rat(3, 4)]).unwrap(),
        rat(1, 2)
    );
    assert_eq!(
        two_type_psi(&k2, &w, &[rat(1, 4), rat(1, 8)]).unwrap(),
        rat(1, 10)
    );
    assert!(two_type_psi(&k2, &w, &[rat(1, 2), rat(1, 8)]).is_err());

    // u = v = 0, s = 1 is bipartite, so no triangle has positive weight
    let bip = graphon((0, 1), (0, 1), (1, 1));
    let alloc = vec![Allocation::new(rat(1, 6), rat(1, 6)); 3];
    assert!(
        two_type_partition_integral(&SmallGraph::complete(3), &bip, &alloc)
            .unwrap()
            .is_zero()
    );

    // constant W integrates to p^e times the product of the measures
    let c = TwoTypeGraphon::constant(rat(1, 3)).unwrap();
    let alloc = vec![
        Allocation::new(rat(1, 10), rat(1, 5)),
        Allocation::new(rat(1, 5), rat_int(0)),
        Allocation::new(rat_int(0), rat(1, 10)),
    ];
    let got = two_type_partition_integral(&SmallGraph::path(3), &c, &alloc).unwrap();
    assert_eq!(got, rat(1, 9) * rat(3, 10) * rat(1, 5) * rat(1, 10));
}

#[test]
fn experiment_fixture_is_reproducible() {
    let gen = Generator::Gnp {
        n: 40,
        p: rat(1, 2),
    };
    let alphas = vec![rat(1, 4); 3];
    let r = qr_experiment(&SmallGraph::path(3), &gen, &alphas, 4, 2024).unwrap();
    assert_eq!(r.part_sizes, vec![10, 10, 10]);
    assert_eq!(r.expected, rat_int(250));
    let got: Vec<(usize, u128)> = r.trials.iter().map(|t| (t.edges, t.count)).collect();
    assert_eq!(got, vec![(384, 258), (383, 272), (397, 236), (382, 187)]);
    assert_eq!(
        r.mean_normalized_deviation,
        parse_rational("107/256000").unwrap()
    );

    let w = graphon((9, 10), (1, 10), (1, 2));
    let gen = Generator::TwoType { n: 30, graphon: w };
    let r = qr_experiment(
        &SmallGraph::complete(2),
        &gen,
        &[rat(1, 3), rat(1, 3)],
        3,
        7,
    )
    .unwrap();
    assert_eq!(r.expected, rat_int(50));
    let got: Vec<(usize, u128)> = r.trials.iter().map(|t| (t.edges, t.count)).collect();
    assert_eq!(got, vec![(225, 50), (224, 63), (221, 45)]);
    assert_eq!(r.mean_normalized_deviation, rat(1, 150));
}

#[test]
fn experiment_report_is_thread_independent() {
    let gen = Generator::Gnp {
        n: 60,
        p: rat(1, 3),
    };
    let alphas = vec![rat(1, 5); 3];
    let run = |threads| {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap();
        pool.install(|| qr_experiment(&SmallGraph::complete(3), &gen, &alphas, 8, 99).unwrap())
    };
    let (a, b) = (run(1), run(4));
    assert_eq!(a, b);
    assert_eq!(
        serde_json::to_string(&a).unwrap(),
        serde_json::to_string(&b).unwrap()
    );
}

#[test]
fn symmetrized_single_edge_is_stable_on_two_type_hosts() {
    // for K2 the symmetrized count tracks the expectation even when the
    // graphon is far from constant
    let w = graphon((1, 1), (0, 1), (1, 2));
    let gen = Generator::TwoType { n: 120, graphon: w };
    let r = qr_experiment(
        &SmallGraph::complete(2),
        &gen,
        &[rat(1, 3), rat(1, 3)],
        6,
        5,
    )
    .unwrap();
    let mean = r.mean_relative_deviation_f64.unwrap();
    assert!(mean < 0.15, "mean relative deviation {mean}");
    for t in &r.trials {
        let sym = t.symmetrized_relative_deviation.clone().unwrap();
        assert!(
            sym < BigRational::new(1.into(), 4.into()),
            "trial {}: {sym}",
            t.trial
        );
    }
}

#[test]
fn experiment_rejects_bad_fractions() {
    let gen = Generator::Gnp {
        n: 10,
        p: rat(1, 2),
    };
    let k2 = SmallGraph::complete(2);
    assert!(qr_experiment(&k2, &gen, &[rat(1, 2)], 1, 0).is_err());
    assert!(qr_experiment(&k2, &gen, &[rat(2, 3), rat(2, 3)], 1, 0).is_err());
    assert!(qr_experiment(&k2, &gen, &[rat(-1, 3), rat(1, 3)], 1, 0).is_err());
    assert!(qr_experiment(
        &k2,
        &Generator::Gnp { n: 0, p: rat(1, 2) },
        &[rat(1, 3), rat(1, 3)],
        1,
        0
    )
    .is_err());
}
