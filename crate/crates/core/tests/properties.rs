use proptest::prelude::*;

use abelgraph::balanced::{enumerate_balanced, BalanceChecker};
use abelgraph::corpus::{generate, CorpusSpec};
use abelgraph::graph::DualGraph;
use abelgraph::lattice::{canonical_representative, classes_equal, twister_multidegree, Multidegree};

fn graph(seed: u64) -> DualGraph {
    let spec = CorpusSpec {
        genus: [2, 4],
        vertices: [1, 5],
        max_edges: 10,
        seed,
        count: 1,
        loop_probability: 0.15,
    };
    generate(&spec).unwrap().remove(0)
}

/// A graph together with two integer vectors of matching length.
fn graph_and_vectors(range: i64) -> impl Strategy<Value = (DualGraph, Vec<i64>, Vec<i64>)> {
    any::<u64>().prop_map(graph).prop_flat_map(move |g| {
        let n = g.vertex_count();
        (
            Just(g),
            prop::collection::vec(-range..=range, n),
            prop::collection::vec(-range..=range, n),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn json_round_trip(seed in any::<u64>()) {
        let g = graph(seed);
        let back = DualGraph::from_json(&g.to_json()).unwrap();
        prop_assert!(back.same_structure(&g));
        prop_assert_eq!(back.to_json(), g.to_json());
    }

    #[test]
    fn blow_up_keeps_genus(seed in any::<u64>(), pick in any::<prop::sample::Index>()) {
        let g = graph(seed);
        prop_assume!(g.edge_count() > 0);
        let e = g.edge(pick.index(g.edge_count())).id.clone();
        let blown = g.blow_up(&e).unwrap();
        prop_assert_eq!(blown.graph.genus(), g.genus());
        prop_assert!(blown.graph.is_quasistable());
        let ex = blown.graph.vertex_index(&blown.exceptional).unwrap();
        prop_assert!(blown.graph.is_exceptional(ex));
        prop_assert_eq!(blown.graph.edge_count(), g.edge_count() + 1);
        let back = blown.graph.contract_exceptional(ex).unwrap();
        prop_assert_eq!(back.genus(), g.genus());
        prop_assert_eq!(back.edge_count(), g.edge_count());
        prop_assert_eq!(back.is_stable(), g.is_stable());
    }

    #[test]
    fn canonical_representative_is_a_class_invariant((g, l, c) in graph_and_vectors(6)) {
        let l = Multidegree::new(l);
        let twisted = &l + &twister_multidegree(&g, &c).unwrap();
        let rep = canonical_representative(&g, &l, 0).unwrap();
        prop_assert_eq!(rep.total(), l.total());
        prop_assert_eq!(&canonical_representative(&g, &rep, 0).unwrap(), &rep);
        prop_assert_eq!(&canonical_representative(&g, &twisted, 0).unwrap(), &rep);
        prop_assert!(classes_equal(&g, &l, &twisted).unwrap());
        prop_assert!(classes_equal(&g, &l, &rep).unwrap());
    }

    #[test]
    fn class_equality_matches_representatives((g, a, b) in graph_and_vectors(3)) {
        let a = Multidegree::new(a);
        let mut b = Multidegree::new(b);
        // move b to the total degree of a
        b.add_at(0, a.total() - b.total());
        let same = canonical_representative(&g, &a, 0).unwrap() == canonical_representative(&g, &b, 0).unwrap();
        prop_assert_eq!(classes_equal(&g, &a, &b).unwrap(), same);
        let last = g.vertex_count() - 1;
        let other_base = canonical_representative(&g, &a, last).unwrap() == canonical_representative(&g, &b, last).unwrap();
        prop_assert_eq!(other_base, same);
    }

    #[test]
    fn one_sided_check_matches_two_sided((g, l, _) in graph_and_vectors(4)) {
        let checker = BalanceChecker::new(&g).unwrap();
        let l = Multidegree::new(l);
        prop_assert_eq!(checker.is_semibalanced(&l).unwrap(), checker.is_semibalanced_two_sided(&l).unwrap());
    }

    #[test]
    fn adding_the_canonical_degrees_shifts_balanced_sets(seed in any::<u64>(), d in -2i64..5) {
        let g = graph(seed);
        let w = Multidegree::new((0..g.vertex_count()).map(|v| g.omega_degree(v)).collect());
        let shifted = enumerate_balanced(&g, d + 2 * g.genus() - 2).unwrap();
        let base = enumerate_balanced(&g, d).unwrap();
        let moved: Vec<Multidegree> = base.balanced.iter().map(|l| l + &w).collect();
        prop_assert_eq!(&shifted.balanced, &moved);
        let moved: Vec<Multidegree> = base.stably_balanced.iter().map(|l| l + &w).collect();
        prop_assert_eq!(&shifted.stably_balanced, &moved);
    }

    #[test]
    fn balanced_sets_are_symmetric_under_duality(seed in any::<u64>(), d in -2i64..6) {
        // l is balanced in degree d iff w − l is balanced in degree 2g − 2 − d
        let g = graph(seed);
        let w = Multidegree::new((0..g.vertex_count()).map(|v| g.omega_degree(v)).collect());
        let a = enumerate_balanced(&g, d).unwrap();
        let b = enumerate_balanced(&g, 2 * g.genus() - 2 - d).unwrap();
        let mut dual: Vec<Multidegree> = a.balanced.iter().map(|l| &w - l).collect();
        dual.sort();
        prop_assert_eq!(&b.balanced, &dual);
    }
}
