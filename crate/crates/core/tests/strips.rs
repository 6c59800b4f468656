mod common;

use common::*;
use lampwalk::base_group::{BoundaryPoint, Direction};
use lampwalk::strips::{
    base_strip, busemann, check_equivariance, half_space_partition, lifted_strip_count, strip_ball_count,
    OmegaPoint, PartitionScheme, Side,
};
use lampwalk::{BaseElement, Configuration, LampElement, MetricParams, Rational};
use proptest::prelude::*;

/// A point of the strip between `u` and `v`, chosen by a signed offset from the confluence word.
fn strip_point(u: &lampwalk::End, v: &lampwalk::End, offset: i64) -> BaseElement {
    let c = u.common_prefix_with(v).unwrap().unwrap();
    let (end, len) = if offset >= 0 { (u, c + offset as usize) } else { (v, c + offset.unsigned_abs() as usize) };
    BaseElement::Free(end.initial_segment(len).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn busemann_cocycle(u in end(), x in free_element(8), y in free_element(8), z in free_element(8)) {
        let b = |p: &BaseElement, q: &BaseElement| busemann(&point(&u), p, q).unwrap();
        prop_assert_eq!(b(&x, &z), b(&x, &y) + b(&y, &z));
        prop_assert_eq!(b(&x, &y), -b(&y, &x));
        prop_assert_eq!(b(&x, &x), 0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn horosphere_membership((u, v) in end_pair(), offset in -4i64..=4, y in free_element(6)) {
        let x = strip_point(&u, &v, offset);
        let p = half_space_partition(&point(&u), &point(&v), &x, &PartitionScheme::Horosphere).unwrap();
        prop_assert_eq!(p.classify(&x).unwrap(), Side::Plus);
        let on_u = busemann(&point(&u), &x, &y).unwrap() == 0;
        let on_v = busemann(&point(&v), &x, &y).unwrap() == 0;
        let expect = if on_u { Side::Plus } else if on_v { Side::Minus } else { Side::Neither };
        prop_assert_eq!(p.classify(&y).unwrap(), expect);
    }

    #[test]
    fn edge_cut_contains_the_u_side((u, v) in end_pair(), offset in -4i64..=4, depth in 1usize..6) {
        let x = strip_point(&u, &v, offset);
        let p = half_space_partition(&point(&u), &point(&v), &x, &PartitionScheme::TreeEdgeCut).unwrap();
        let far = x.norm() as usize + u.common_prefix_with(&v).unwrap().unwrap() + depth + 4;
        prop_assert_eq!(p.classify(&BaseElement::Free(u.initial_segment(far).unwrap())).unwrap(), Side::Plus);
        prop_assert_eq!(p.classify(&BaseElement::Free(v.initial_segment(far).unwrap())).unwrap(), Side::Minus);
    }

    #[test]
    fn tree_strip_growth_is_linear((u, v) in end_pair()) {
        let s = base_strip(&point(&u), &point(&v)).unwrap();
        let through_e = s.contains(&BaseElement::Free(Default::default()));
        for n in 1..=12u32 {
            let k = strip_ball_count(&s, n).unwrap();
            prop_assert!(k <= 2 * n as u128 + 1 && k <= 3 * n as u128);
            if through_e {
                prop_assert_eq!(k, 2 * n as u128 + 1);
            }
        }
    }

    #[test]
    fn lifted_count_is_dominated(
        (u, v) in end_pair(),
        phi_p in configuration(f2(), 2, 6, 5),
        phi_m in configuration(f2(), 2, 6, 5),
        n in 0u32..=8,
    ) {
        let bp = OmegaPoint::new(phi_p, point(&u)).unwrap();
        let bm = OmegaPoint::new(phi_m, point(&v)).unwrap();
        for scheme in [PartitionScheme::TreeEdgeCut, PartitionScheme::Horosphere] {
            let (g, base) = lifted_strip_count(&bp, &bm, &scheme, n, &MetricParams::default()).unwrap();
            prop_assert!(g <= base);
            if n == 0 {
                prop_assert!(g <= 1);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn tree_equivariance_fuzz(
        (u, v) in end_pair(),
        offset in -3i64..=3,
        g in lamp_element(f2(), 2, 4, 4),
        phi_p in configuration(f2(), 2, 4, 4),
        phi_m in configuration(f2(), 2, 4, 4),
    ) {
        let bp = OmegaPoint::new(phi_p, point(&u)).unwrap();
        let bm = OmegaPoint::new(phi_m, point(&v)).unwrap();
        let x = strip_point(&u, &v, offset);
        let r = check_equivariance(&g, &bp, &bm, &x, &PartitionScheme::TreeEdgeCut, &f2(), 5).unwrap();
        prop_assert!(r.is_ok(), "{:?}", r);
        // horospheres: set-level identities for any g, the lift for pure translations
        let r = check_equivariance(&g, &bp, &bm, &x, &PartitionScheme::Horosphere, &f2(), 5).unwrap();
        prop_assert!(r.strip_mismatches.is_empty() && r.partition_mismatches.is_empty(), "{:?}", r);
        let travel = LampElement::travel(g.pos.clone(), 2);
        let r = check_equivariance(&travel, &bp, &bm, &x, &PartitionScheme::Horosphere, &f2(), 5).unwrap();
        prop_assert!(r.is_ok(), "{:?}", r);
    }

    #[test]
    fn lattice_equivariance_fuzz(
        m in prop::collection::vec(-3i64..=3, 3).prop_filter("nonzero drift", |m| m.iter().any(|&c| c != 0)),
        g in lamp_element(z3(), 2, 4, 6),
        phi_p in configuration(z3(), 2, 4, 6),
        phi_m in configuration(z3(), 2, 4, 6),
        x in lattice_element(3, 3),
    ) {
        let mf: Vec<f64> = m.iter().map(|&c| c as f64).collect();
        let u = BoundaryPoint::Direction(Direction::normalize(&mf).unwrap());
        let v = BoundaryPoint::Direction(Direction::normalize(&mf.iter().map(|c| -c).collect::<Vec<_>>()).unwrap());
        let scheme = PartitionScheme::Hyperplane { drift: m.iter().map(|&c| Rational::new(c, 6)).collect() };
        let bp = OmegaPoint::new(phi_p, u).unwrap();
        let bm = OmegaPoint::new(phi_m, v).unwrap();
        let r = check_equivariance(&g, &bp, &bm, &x, &scheme, &z3(), 5).unwrap();
        prop_assert!(r.is_ok(), "{:?}", r);
    }
}

#[test]
fn log_growth_decreases() {
    let tree = base_strip(&point(&"a.a".parse().unwrap()), &point(&"A.A".parse().unwrap())).unwrap();
    let d = |v: [f64; 3]| BoundaryPoint::Direction(Direction::normalize(&v).unwrap());
    let lattice = base_strip(&d([1.0, 0.0, 0.0]), &d([-1.0, 0.0, 0.0])).unwrap();
    for s in [tree, lattice] {
        let rates: Vec<f64> = (4..=12).map(|n| (strip_ball_count(&s, n).unwrap() as f64).ln() / n as f64).collect();
        assert!(rates.windows(2).all(|w| w[1] < w[0]), "{rates:?}");
    }
}

#[test]
fn zero_lamps_count_equals_base() {
    let bp = OmegaPoint::new(Configuration::zero(2), point(&"a.a".parse().unwrap())).unwrap();
    let bm = OmegaPoint::new(Configuration::zero(2), point(&"b.b".parse().unwrap())).unwrap();
    for n in 0..=10 {
        let (g, base) = lifted_strip_count(&bp, &bm, &PartitionScheme::TreeEdgeCut, n, &MetricParams::default()).unwrap();
        assert_eq!((g, base), (2 * n as u128 + 1, 2 * n as u128 + 1));
    }
}
