use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use qrcert::poly::{
    interval_eval, isolate_roots, parse_rational, rat, rat_int, refine, resultant_v, sign_at,
    sturm_count, sylvester_resultant, BiPoly, Bound, Interval, QPoly, RootIsolator, UniPoly,
};

/// Textbook Sturm count over the rationals, used as an independent check of
/// the integer subresultant chain: p0 = p/gcd(p,p'), p1 = p0', p_{k+1} = -rem.
fn reference_count(p: &UniPoly, lo: &BigRational, hi: &BigRational) -> usize {
    let q = p.to_rational();
    let g = q.gcd(&q.derivative());
    let sqf = q.divrem(&g).unwrap().0;
    let mut chain = vec![sqf.clone(), sqf.derivative()];
    while !chain.last().unwrap().is_zero() {
        let n = chain.len();
        let r = chain[n - 2].divrem(&chain[n - 1]).unwrap().1;
        chain.push(r.neg());
    }
    chain.pop();
    let variations = |x: &BigRational| {
        let signs: Vec<i32> = chain
            .iter()
            .map(|c| {
                let v = c.eval(x);
                if v.is_positive() {
                    1
                } else if v.is_negative() {
                    -1
                } else {
                    0
                }
            })
            .filter(|&s| s != 0)
            .collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    };
    variations(lo) - variations(hi)
}

fn planted(roots: &[(i64, i64, u32)], quadratic: Option<i64>) -> UniPoly {
    let mut p = UniPoly::from_i64s(&[1]);
    for &(num, den, mult) in roots {
        for _ in 0..mult {
            p = p.mul(&UniPoly::from_i64s(&[-num, den]));
        }
    }
    if let Some(c) = quadratic {
        p = p.mul(&UniPoly::from_i64s(&[c, 0, 1]));
    }
    p
}

fn arb_roots() -> impl Strategy<Value = Vec<(i64, i64, u32)>> {
    proptest::collection::vec((-40i64..40, 1i64..7, 1u32..3), 0..5)
}

fn distinct_roots(roots: &[(i64, i64, u32)]) -> Vec<BigRational> {
    let mut xs: Vec<BigRational> = roots.iter().map(|&(n, d, _)| rat(n, d)).collect();
    xs.sort();
    xs.dedup();
    xs
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn sturm_counts_planted_roots(
        roots in arb_roots(),
        quad in prop_oneof![Just(None), (1i64..9).prop_map(Some), Just(Some(-2))],
        a in -50i64..50,
        width in 1i64..80,
    ) {
        let p = planted(&roots, quad);
        prop_assume!(p.degree().unwrap_or(0) > 0);
        // endpoints with denominator 13 never hit a planted rational root
        let (lo, hi) = (rat(a * 13 + 1, 13), rat((a + width) * 13 + 1, 13));
        let mut expected = distinct_roots(&roots).iter().filter(|x| &lo < *x && *x < &hi).count();
        if quad == Some(-2) {
            let below = |x: &BigRational| x.is_negative() || x * x < rat_int(2);
            let above = |x: &BigRational| x.is_positive() && x * x > rat_int(2);
            expected += (below(&lo) && above(&hi)) as usize;
            expected += (above(&-lo.clone()) && below(&-hi.clone())) as usize;
        }
        let (blo, bhi) = (Bound::Finite(lo.clone()), Bound::Finite(hi.clone()));
        prop_assert_eq!(sturm_count(&p, &blo, &bhi).unwrap(), expected);
        prop_assert_eq!(reference_count(&p, &lo, &hi), expected);
    }

    #[test]
    fn sturm_matches_reference_on_random_polynomials(
        coeffs in proptest::collection::vec(-30i64..30, 2..10),
        a in -20i64..20,
        width in 1i64..40,
    ) {
        let p = UniPoly::from_i64s(&coeffs);
        prop_assume!(p.degree().unwrap_or(0) > 0);
        let (lo, hi) = (rat(2 * a + 1, 2), rat(2 * (a + width) + 1, 2));
        prop_assume!(sign_at(&p, &lo) != 0 && sign_at(&p, &hi) != 0);
        let n = sturm_count(&p, &Bound::Finite(lo.clone()), &Bound::Finite(hi.clone())).unwrap();
        prop_assert_eq!(n, reference_count(&p, &lo, &hi));
    }

    #[test]
    fn isolation_is_consistent(coeffs in proptest::collection::vec(-20i64..20, 2..9)) {
        let p = UniPoly::from_i64s(&coeffs);
        prop_assume!(p.degree().unwrap_or(0) > 0);
        let boxes = isolate_roots(&p, &Bound::NegInf, &Bound::PosInf).unwrap();
        let total = sturm_count(&p, &Bound::NegInf, &Bound::PosInf).unwrap();
        prop_assert_eq!(boxes.len(), total);
        let sqf = p.squarefree_part();
        for w in boxes.windows(2) {
            prop_assert!(w[0].hi <= w[1].lo);
        }
        let eps = parse_rational("1/1000").unwrap();
        for b in &boxes {
            prop_assert!(sign_at(&sqf, &b.lo) * sign_at(&sqf, &b.hi) < 0);
            let r = refine(b, &p, &eps).unwrap();
            prop_assert!(r.width() <= eps);
            prop_assert!(b.lo <= r.lo && r.hi <= b.hi);
            prop_assert!(sign_at(&sqf, &r.lo) * sign_at(&sqf, &r.hi) <= 0);
        }
    }

    #[test]
    fn resultant_prs_matches_sylvester(
        f in proptest::collection::vec(proptest::collection::vec(-5i64..5, 1..4), 1..4),
        g in proptest::collection::vec(proptest::collection::vec(-5i64..5, 1..4), 1..4),
    ) {
        let f = bi(&f);
        let g = bi(&g);
        prop_assume!(!f.is_zero() && !g.is_zero());
        prop_assert_eq!(resultant_v(&f, &g).unwrap(), sylvester_resultant(&f, &g));
    }

    #[test]
    fn planted_common_root_is_a_root_of_the_resultant(
        f in proptest::collection::vec(proptest::collection::vec(-4i64..4, 1..4), 2..4),
        g in proptest::collection::vec(proptest::collection::vec(-4i64..4, 1..4), 2..4),
        u0 in -3i64..3,
        v0 in -3i64..3,
    ) {
        let (f, g) = (bi(&f), bi(&g));
        let f = f.sub(&BiPoly::constant(UniPoly::constant(eval_int(&f, u0, v0))));
        let g = g.sub(&BiPoly::constant(UniPoly::constant(eval_int(&g, u0, v0))));
        prop_assume!(f.degree().unwrap_or(0) > 0 && g.degree().unwrap_or(0) > 0);
        let r = resultant_v(&f, &g).unwrap();
        prop_assert!(r.eval(&BigInt::from(u0)).is_zero());
    }

    #[test]
    fn interval_enclosures_contain_point_values(
        f in proptest::collection::vec(proptest::collection::vec(-6i64..6, 1..5), 1..5),
        (ulo, uw, vlo, vw) in (-8i64..8, 1i64..6, -8i64..8, 1i64..6),
        (tu, tv) in (0i64..=10, 0i64..=10),
    ) {
        let f = bi(&f);
        let ub = Interval::new(rat(ulo, 4), rat(ulo + uw, 4));
        let vb = Interval::new(rat(vlo, 4), rat(vlo + vw, 4));
        let u = &ub.lo + (&ub.hi - &ub.lo) * rat(tu, 10);
        let v = &vb.lo + (&vb.hi - &vb.lo) * rat(tv, 10);
        let enclosure = interval_eval(&f, &ub, &vb);
        prop_assert!(enclosure.contains(&eval_rat(&f, &u, &v)));
    }
}

fn bi(rows: &[Vec<i64>]) -> BiPoly {
    BiPoly::new(rows.iter().map(|r| UniPoly::from_i64s(r)).collect())
}

fn eval_rat(f: &BiPoly, u: &BigRational, v: &BigRational) -> BigRational {
    let q = QPoly::new(f.coeffs().iter().map(|c| c.eval_rational(u)).collect());
    q.eval(v)
}

fn eval_int(f: &BiPoly, u: i64, v: i64) -> BigInt {
    eval_rat(f, &rat_int(u), &rat_int(v)).to_integer()
}

#[test]
fn sqrt2_is_isolated_and_refined() {
    let p = UniPoly::from_i64s(&[-2, 0, 1]);
    let boxes = isolate_roots(&p, &Bound::int(0), &Bound::PosInf).unwrap();
    assert_eq!(boxes.len(), 1);
    let r = refine(&boxes[0], &p, &rat(1, 1 << 20)).unwrap();
    assert!(&r.lo * &r.lo < rat_int(2) && &r.hi * &r.hi > rat_int(2));
}

#[test]
fn isolator_avoiding_points_removes_them() {
    // u^3 (u - 1)^2 (2u - 1)
    let p = UniPoly::from_i64s(&[0, 0, 0, 1])
        .mul(&UniPoly::from_i64s(&[1, -2, 1]))
        .mul(&UniPoly::from_i64s(&[-1, 2]));
    let iso = RootIsolator::avoiding(&p, &[rat_int(0), rat_int(1)]).unwrap();
    assert_eq!(iso.squarefree(), &UniPoly::from_i64s(&[-1, 2]));
    assert_eq!(iso.count(&Bound::int(0), &Bound::int(1)), 1);
    assert_eq!(iso.count(&Bound::int(1), &Bound::PosInf), 0);
}
