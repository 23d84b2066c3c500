mod common;

use proptest::prelude::*;

use signed_nullity::balance::{
    cycle_sign, fundamental_cycles, is_balanced, switch, switching_equivalent,
};
use signed_nullity::enumeration::{canonical_code, signature_representatives};
use signed_nullity::recognizers::{recognize_rank2, recognize_rank3};
use signed_nullity::reductions::reduce;
use signed_nullity::{
    forest_nullity_formula, nullity, parse_graph, rank, to_graph_file, Sign, SignedGraph,
    SwitchingFunction,
};

use common::{all_pairs, rational_rank};

fn signed_graph(max_n: usize) -> impl Strategy<Value = SignedGraph> {
    (1..=max_n).prop_flat_map(|n| {
        let m = n * (n - 1) / 2;
        (
            Just(n),
            prop::collection::vec((any::<bool>(), any::<bool>()), m),
        )
            .prop_map(|(n, bits)| {
                let edges = all_pairs(n)
                    .into_iter()
                    .zip(bits)
                    .filter(|(_, (present, _))| *present)
                    .map(|((u, v), (_, negative))| (u, v, Sign::from_parity(negative)));
                SignedGraph::new(n, edges).unwrap()
            })
    })
}

fn with_switching(max_n: usize) -> impl Strategy<Value = (SignedGraph, SwitchingFunction)> {
    signed_graph(max_n).prop_flat_map(|g| {
        let n = g.order();
        (Just(g), prop::collection::vec(any::<bool>(), n)).prop_map(|(g, flips)| {
            (
                g,
                SwitchingFunction::new(flips.into_iter().map(Sign::from_parity).collect()),
            )
        })
    })
}

fn with_permutation(max_n: usize) -> impl Strategy<Value = (SignedGraph, Vec<usize>)> {
    signed_graph(max_n).prop_flat_map(|g| {
        let perm: Vec<usize> = (0..g.order()).collect();
        (Just(g), Just(perm).prop_shuffle())
    })
}

/// A random tree from a Prüfer-like parent choice, plus signs.
fn signed_forest(max_n: usize) -> impl Strategy<Value = SignedGraph> {
    (2..=max_n).prop_flat_map(|n| {
        (
            Just(n),
            prop::collection::vec(
                (any::<prop::sample::Index>(), any::<bool>(), any::<bool>()),
                n - 1,
            ),
        )
            .prop_map(|(n, choices)| {
                let edges = choices
                    .into_iter()
                    .enumerate()
                    .filter(|(_, (_, keep, _))| *keep)
                    .map(|(i, (parent, _, neg))| {
                        (parent.index(i + 1), i + 1, Sign::from_parity(neg))
                    });
                SignedGraph::new(n, edges).unwrap()
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn switching_is_an_involution((g, theta) in with_switching(9)) {
        let once = switch(&g, &theta).unwrap();
        prop_assert_eq!(switch(&once, &theta).unwrap(), g);
    }

    #[test]
    fn switching_preserves_rank_and_cycle_signs((g, theta) in with_switching(9)) {
        let h = switch(&g, &theta).unwrap();
        prop_assert_eq!(rank(&g), rank(&h));
        for c in fundamental_cycles(&g) {
            prop_assert_eq!(cycle_sign(&g, &c).unwrap(), cycle_sign(&h, &c).unwrap());
        }
        prop_assert_eq!(is_balanced(&g).is_balanced(), is_balanced(&h).is_balanced());
        let found = switching_equivalent(&g, &h).unwrap();
        prop_assert!(found.is_some());
        prop_assert_eq!(switch(&g, &found.unwrap()).unwrap(), h);
    }

    #[test]
    fn balance_witness_validates(g in signed_graph(9)) {
        prop_assert!(is_balanced(&g).validates(&g));
    }

    #[test]
    fn exact_rank_matches_rational_oracle(g in signed_graph(10)) {
        prop_assert_eq!(rank(&g), rational_rank(&g));
    }

    #[test]
    fn nullity_is_additive_and_bounded(a in signed_graph(6), b in signed_graph(6)) {
        let u = a.disjoint_union(&b);
        prop_assert_eq!(nullity(&u), nullity(&a) + nullity(&b));
        prop_assert!(nullity(&a) <= a.order());
        prop_assert_eq!(nullity(&a) == a.order(), a.size() == 0);
        if a.size() > 0 {
            prop_assert!(rank(&a) >= 2);
        }
    }

    #[test]
    fn rank_ignores_labels((g, perm) in with_permutation(9)) {
        let h = g.relabel(&perm);
        prop_assert_eq!(rank(&g), rank(&h));
        prop_assert_eq!(canonical_code(&g), canonical_code(&h));
    }

    #[test]
    fn graph_file_round_trips(g in signed_graph(10)) {
        prop_assert_eq!(parse_graph(&to_graph_file(&g)).unwrap(), g);
    }

    #[test]
    fn recognizers_ignore_switching((g, theta) in with_switching(7)) {
        let h = switch(&g, &theta).unwrap();
        prop_assert_eq!(recognize_rank2(&g).matches, recognize_rank2(&h).matches);
        prop_assert_eq!(recognize_rank3(&g).matches, recognize_rank3(&h).matches);
        prop_assert_eq!(recognize_rank2(&g).matches, rank(&g) == 2);
        prop_assert_eq!(recognize_rank3(&g).matches, rank(&g) == 3);
    }

    #[test]
    fn representatives_partition_switching_classes(g in signed_graph(7)) {
        prop_assume!(g.is_connected() && g.cyclomatic_number() <= 4);
        let reps = signature_representatives(&g).unwrap();
        prop_assert_eq!(reps.len(), 1usize << g.cyclomatic_number());
        let hits = reps.iter().filter(|r| switching_equivalent(&g, r).unwrap().is_some()).count();
        prop_assert_eq!(hits, 1);
        for i in 0..reps.len() {
            for j in 0..i {
                prop_assert!(switching_equivalent(&reps[i], &reps[j]).unwrap().is_none());
            }
        }
    }

    #[test]
    fn forest_formula_matches_kernel(f in signed_forest(12)) {
        prop_assert_eq!(forest_nullity_formula(&f).unwrap(), nullity(&f));
    }

    #[test]
    fn reduction_preserves_nullity(g in signed_graph(9)) {
        let (residue, trace) = reduce(&g);
        prop_assert_eq!(nullity(&residue), nullity(&g));
        prop_assert_eq!(trace.replay(&g).unwrap(), residue.clone());
        if g.is_forest() {
            prop_assert_eq!(residue.size(), 0);
        }
    }
}
