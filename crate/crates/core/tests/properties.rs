mod common;

use std::sync::Arc;

use leavitt::core_fd::{fd_span, matrix_units};
use leavitt::fixtures;
use leavitt::graph::{cutoff_vertices, Graph};
use leavitt::groupoid::{CylinderBisection, Groupoid};
use leavitt::lengths::length_profiles;
use leavitt::lpa::{normal_form, normal_form_traced, normal_form_with, parse_element, Element, ReductionOrder};
use leavitt::random;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn fixture(i: usize) -> Arc<Graph> {
    Arc::new(match i % 5 {
        0 => fixtures::loop_graph(),
        1 => fixtures::l2(),
        2 => fixtures::c2(),
        3 => fixtures::chain(),
        _ => fixtures::ladder(2, 0).instantiate(3),
    })
}

fn elem(rng: &mut ChaCha8Rng, g: &Arc<Graph>) -> Element {
    random::raw_sum(rng, g, 3, 3).normalize()
}

fn add(a: &Element, b: &Element) -> Element {
    a.add(b).unwrap()
}

fn mul(a: &Element, b: &Element) -> Element {
    a.mul(b).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn ring_axioms(which in 0usize..5, seed in any::<u64>()) {
        let g = fixture(which);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b, c) = (elem(&mut rng, &g), elem(&mut rng, &g), elem(&mut rng, &g));
        prop_assert_eq!(mul(&mul(&a, &b), &c), mul(&a, &mul(&b, &c)));
        prop_assert_eq!(mul(&a, &add(&b, &c)), add(&mul(&a, &b), &mul(&a, &c)));
        prop_assert_eq!(mul(&add(&a, &b), &c), add(&mul(&a, &c), &mul(&b, &c)));
        prop_assert_eq!(add(&a, &b), add(&b, &a));
        prop_assert!(a.sub(&a).unwrap().is_zero());
        prop_assert!(mul(&a, &Element::zero(g.clone())).is_zero());
    }

    #[test]
    fn star_reverses_products(which in 0usize..5, seed in any::<u64>()) {
        let g = fixture(which);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b) = (elem(&mut rng, &g), elem(&mut rng, &g));
        prop_assert_eq!(mul(&a, &b).star(), mul(&b.star(), &a.star()));
        prop_assert_eq!(a.star().star(), a.clone());
        prop_assert_eq!(add(&a, &b).star(), add(&a.star(), &b.star()));
    }

    #[test]
    fn graded_products(which in 0usize..5, seed in any::<u64>(), da in -3i64..=3, db in -3i64..=3) {
        let g = fixture(which);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random::homogeneous_sum(&mut rng, &g, 3, 3, da).normalize();
        let y = random::homogeneous_sum(&mut rng, &g, 3, 3, db).normalize();
        let p = mul(&x, &y);
        prop_assert!(p.is_zero() || p.is_homogeneous_of(da + db));
        prop_assert!(x.is_zero() || x.star().is_homogeneous_of(-da));
        // the homogeneous components add back up
        let z = add(&x, &y);
        let mut total = Element::zero(g.clone());
        for part in z.grade_decompose().values() {
            total = add(&total, part);
        }
        prop_assert_eq!(total, z);
    }

    #[test]
    fn confluence_on_random_graphs(gseed in any::<u64>(), s1 in any::<u64>(), s2 in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(gseed);
        let g = Arc::new(random::graph(&mut rng, 4, 6));
        let raw = random::raw_sum(&mut rng, &g, 4, 3);
        let mut r1 = ChaCha8Rng::seed_from_u64(s1);
        let mut r2 = ChaCha8Rng::seed_from_u64(s2);
        let a = normal_form_with(&raw, ReductionOrder::Random(&mut r1));
        let b = normal_form_with(&raw, ReductionOrder::Random(&mut r2));
        prop_assert_eq!(&a, &b);
        prop_assert_eq!(a, normal_form(&raw));
    }

    #[test]
    fn reduction_measure_decreases(which in 0usize..5, seed in any::<u64>()) {
        let g = fixture(which);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let raw = random::raw_sum(&mut rng, &g, 4, 4);
        let mut order = ChaCha8Rng::seed_from_u64(seed ^ 1);
        let (_, trace) = normal_form_traced(&raw, ReductionOrder::Random(&mut order));
        // sorted largest first, so lexicographic order is the multiset order
        for w in trace.windows(2) {
            prop_assert!(w[0] > w[1], "{:?} then {:?}", w[0], w[1]);
        }
        prop_assert!(trace.last().is_none_or(Vec::is_empty));
    }

    #[test]
    fn print_parse_round_trip(which in 0usize..5, seed in any::<u64>()) {
        let g = fixture(which);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = elem(&mut rng, &g);
        let back = parse_element(&a.to_expr(), &g).unwrap().normalize();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn profile_matches_enumeration(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random::graph(&mut rng, 6, 10);
        let p = length_profiles(&g);
        let max = p.preperiod + 2 * p.period + 3;
        for v in g.vertices() {
            let oracle = common::lengths_by_enumeration(&g, v, max);
            for (m, &expected) in oracle.iter().enumerate() {
                prop_assert_eq!(p.member(v, m), expected, "vertex {} length {}", g.vertex_name(v), m);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn matrix_unit_blocks_have_square_dimension(which in 0usize..3, k in 0usize..=2, cut in 1usize..=4) {
        let g = fixture(which);
        let cutoff = cut.min(g.edge_count());
        for v in cutoff_vertices(&g, cutoff) {
            let sys = matrix_units(&g, k, cutoff, v).unwrap();
            prop_assert!(sys.report.ok());
            let d = sys.size();
            prop_assert_eq!(sys.span(&g).dimension(), d * d);
        }
    }

    #[test]
    fn core_spans_are_nested(seed in any::<u64>(), k in 0usize..=1) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = Arc::new(random::graph(&mut rng, 3, 5));
        prop_assume!(g.edge_count() > 0);
        for cutoff in 1..=g.edge_count() {
            let small = fd_span(&g, k, cutoff).unwrap();
            let deeper = fd_span(&g, k + 1, cutoff).unwrap();
            prop_assert!(small.basis().iter().all(|b| deeper.contains(b)));
            if cutoff < g.edge_count() {
                let wider = fd_span(&g, k, cutoff + 1).unwrap();
                prop_assert!(small.basis().iter().all(|b| wider.contains(b)));
            }
        }
    }

    #[test]
    fn core_dimension_matches_oracle(which in 0usize..3, k in 0usize..=2, cut in 1usize..=4) {
        let g = fixture(which);
        let cutoff = cut.min(g.edge_count());
        let d = leavitt::core_fd::fd_dimension(&g, k, cutoff).unwrap();
        prop_assert_eq!(d, common::core_dimension_by_expansion(&g, k, cutoff));
    }

    #[test]
    fn groupoid_laws(which in 0usize..3, seed in any::<u64>(), n in 0usize..4, m in 0usize..4) {
        let g = fixture(which);
        let gr = Groupoid::new(g.clone()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mono = random::monomial(&mut rng, &g, 3);
        let z = CylinderBisection::from_monomial(&mono);
        let tail = gr.random_point_at(mono.alpha.source(), &mut rng).unwrap();
        let a = gr.point_in(&z, &tail).unwrap();
        prop_assert!(gr.in_bisection(&a, &z).unwrap());
        prop_assert_eq!(a.lag, z.degree());
        // inverses and units
        let x = a.x.clone();
        let y = a.y.clone();
        prop_assert_eq!(gr.product(&a, &gr.inverse(&a)).unwrap(), gr.unit(&x));
        prop_assert_eq!(gr.product(&gr.inverse(&a), &a).unwrap(), gr.unit(&y));
        prop_assert_eq!(gr.product(&gr.unit(&x), &a).unwrap(), a.clone());
        // associativity along a chain of shifts
        let y1 = y.shift(&g, n).unwrap();
        let y2 = y1.shift(&g, m).unwrap();
        let b = gr.element(&y, n as i64, &y1).unwrap();
        let c = gr.element(&y1, m as i64, &y2).unwrap();
        let left = gr.product(&gr.product(&a, &b).unwrap(), &c).unwrap();
        let right = gr.product(&a, &gr.product(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(&left, &right);
        prop_assert_eq!(left.lag, a.lag + (n + m) as i64);
    }
}
