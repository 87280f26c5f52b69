mod common;

use allocdecomp::allocation::{compute_allocation, optimize, Allocation};
use allocdecomp::certificate::{verify, Certificate};
use allocdecomp::decompose::{
    find_violating_set, forest_decompose_43, nash_williams_partition, pseudoforest_decompose, violates,
    ViolationMode,
};
use allocdecomp::density::{by_flow, check_density_at_most, check_density_below, exhaustive, Measure};
use allocdecomp::graph::is_forest;
use allocdecomp::io::{format_graph, format_graph6, parse_graph, parse_graph6};
use allocdecomp::rational::rat;
use allocdecomp::spine::{build_spine, default_roots, extend_to_pseudospine};
use allocdecomp::Graph;
use proptest::prelude::*;

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut k = 0;
            for v in 1..n {
                for u in 0..v {
                    if bits[k] {
                        edges.push((u, v));
                    }
                    k += 1;
                }
            }
            Graph::from_edges(n, edges).unwrap()
        })
    })
}

fn bound() -> impl Strategy<Value = allocdecomp::Rational> {
    (1..=8i64).prop_flat_map(|q| (0..=4 * q).prop_map(move |p| rat(p, q)))
}

fn json_round_trip(c: &Certificate) -> Certificate {
    serde_json::from_str(&serde_json::to_string(c).unwrap()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 200,
        failure_persistence: None,
        ..ProptestConfig::default()
    })]

    #[test]
    fn graph6_round_trip(g in graph(40)) {
        prop_assert_eq!(parse_graph6(&format_graph6(&g)).unwrap(), g);
    }

    #[test]
    fn edge_list_round_trip(g in graph(20)) {
        prop_assert_eq!(parse_graph(&format_graph(&g)).unwrap(), g);
    }

    #[test]
    fn flow_density_matches_subset_enumeration(g in graph(10)) {
        for measure in Measure::ALL {
            match (by_flow(&g, measure), exhaustive(&g, measure)) {
                (Ok(a), Ok(b)) => {
                    prop_assert_eq!(&a.value, &b.value);
                    prop_assert_eq!(Some(a.value.clone()), common::oracle(&g, measure));
                    prop_assert_eq!(common::ratio(&g, measure, &a.witness), a.value);
                }
                (Err(_), Err(_)) => prop_assert!(common::oracle(&g, measure).is_none()),
                _ => prop_assert!(false, "flow and enumeration disagree on definedness"),
            }
        }
    }

    #[test]
    fn violating_sets_exist_iff_checks_fail(g in graph(9), m in bound()) {
        let m2_set = find_violating_set(&g, &m, ViolationMode::M2);
        if m >= rat(1, 2) {
            prop_assert_eq!(m2_set.is_none(), check_density_at_most(&g, Measure::M2, &m).holds);
        }
        let m43_set = find_violating_set(&g, &m, ViolationMode::M43);
        if g.n() >= 2 {
            prop_assert_eq!(m43_set.is_none(), check_density_below(&g, Measure::M43, &m).holds);
        }
        for (set, mode) in [(m2_set, ViolationMode::M2), (m43_set, ViolationMode::M43)] {
            if let Some(u) = set {
                prop_assert_eq!(u.edge_count, g.induced_edge_count(&u.vertices));
                prop_assert!(violates(mode, &m, u.edge_count, u.vertices.len()));
            }
        }
    }

    #[test]
    fn allocations_survive_optimization_and_records(g in graph(9), extra in 0..3i64) {
        let m = common::oracle_m(&g) + rat(extra, 2);
        let a = compute_allocation(&g, &m).unwrap().unwrap();
        let b = optimize(&a);
        prop_assert!(b.validate().is_ok());
        prop_assert!(b.potential() <= a.potential());
        prop_assert!(is_forest(&b.fractional_graph()));
        let back = Allocation::from_record(g.clone(), &b.to_record()).unwrap();
        prop_assert_eq!(back, b);
    }

    #[test]
    fn spines_are_valid_in_trees(g in graph(9)) {
        let m = common::oracle_m(&g);
        let a = optimize(&compute_allocation(&g, &m).unwrap().unwrap());
        let d = a.integral_digraph();
        let s = build_spine(&d, &default_roots(&d)).unwrap();
        prop_assert_eq!(s.validate(&d), Ok(()));
        prop_assert!(is_forest(&s.forest()));
        prop_assert!(s.digraph.is_subgraph_of(&d));
        prop_assert!(pseudospine_is_pseudoforest(&s, &d));
    }

    #[test]
    fn decompositions_verify_and_round_trip(g in graph(9)) {
        let dec = pseudoforest_decompose(&g).unwrap();
        prop_assert_eq!(dec.verify(), Ok(()));
        let cert = json_round_trip(&Certificate::Decomposition(dec));
        prop_assert_eq!(verify(&cert), Ok(()));
        let m = common::oracle_m(&g);
        if m > rat(3, 2) {
            let dec = forest_decompose_43(&g, &m).unwrap();
            prop_assert_eq!(dec.verify(), Ok(()));
            prop_assert_eq!(verify(&json_round_trip(&Certificate::Decomposition(dec))), Ok(()));
        }
    }

    #[test]
    fn fewest_forests_is_the_ceiling_of_m1(g in graph(9)) {
        prop_assume!(g.edge_count() > 0);
        let m1 = common::oracle(&g, Measure::M1).unwrap();
        let k = m1.ceil().to_integer().try_into().unwrap();
        let p = nash_williams_partition(&g, k);
        prop_assert!(p.is_some());
        prop_assert_eq!(verify(&json_round_trip(&Certificate::Forests(p.unwrap()))), Ok(()));
        prop_assert!(nash_williams_partition(&g, k - 1).is_none());
    }
}

fn pseudospine_is_pseudoforest(s: &allocdecomp::spine::Spine, d: &allocdecomp::Digraph) -> bool {
    let h = extend_to_pseudospine(s, d);
    h.is_subgraph_of(d) && (0..d.n()).all(|v| h.out_degree(v) <= 1) && allocdecomp::graph::is_pseudoforest(&h.underlying_graph())
}
