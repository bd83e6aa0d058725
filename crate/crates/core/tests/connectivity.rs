//! Connectivity routines against the brute-force cut enumeration.

mod common;

use proptest::prelude::*;
use strongsplit::connectivity::{cut_arcs, cut_vertices, is_k_arc_strong, is_strong, strong_components};
use strongsplit::Digraph;

fn digraph(max_n: usize, max_mult: u8) -> impl Strategy<Value = Digraph> {
    (1..=max_n).prop_flat_map(move |n| {
        prop::collection::vec(0..=max_mult, n * n).prop_map(move |m| {
            let mut b = Digraph::builder(n);
            for u in 0..n {
                for v in 0..n {
                    if u != v && m[u * n + v] > 0 {
                        b.set_multiplicity(u, v, m[u * n + v]).unwrap();
                    }
                }
            }
            b.build()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn k_arc_strength_matches_cut_enumeration(d in digraph(7, 2), k in 1usize..4) {
        let brute = common::k_arc_strong(&d, k);
        match is_k_arc_strong(&d, k) {
            Ok(()) => prop_assert!(brute),
            Err(w) => {
                prop_assert!(!brute);
                prop_assert!(w.is_valid_for(&d, k));
            }
        }
    }

    #[test]
    fn strongness_and_components(d in digraph(7, 1)) {
        prop_assert_eq!(is_strong(&d), common::strong(&d));
        let comps = strong_components(&d);
        let mut all: Vec<usize> = comps.iter().flatten().copied().collect();
        all.sort_unstable();
        prop_assert_eq!(all, (0..d.vertex_count()).collect::<Vec<_>>());
        for c in &comps {
            prop_assert!(common::strong_on(c.len(), &common::induced(&d, c)));
        }
    }

    #[test]
    fn cut_arcs_and_vertices_of_strong_digraphs(d in digraph(7, 1)) {
        prop_assume!(common::strong(&d) && d.vertex_count() >= 2);
        let mut got = cut_arcs(&d).unwrap();
        got.sort_unstable();
        prop_assert_eq!(got, common::cut_arcs(&d));
        if d.vertex_count() >= 3 {
            let mut got = cut_vertices(&d).unwrap();
            got.sort_unstable();
            prop_assert_eq!(got, common::cut_vertices(&d));
        } else {
            prop_assert!(cut_vertices(&d).is_err());
        }
    }

    #[test]
    fn reversal_keeps_arc_strength(d in digraph(6, 2), k in 1usize..4) {
        prop_assert_eq!(is_k_arc_strong(&d, k).is_ok(), is_k_arc_strong(&d.reverse(), k).is_ok());
    }
}

#[test]
fn bidirected_complete_strength() {
    for n in 2..8 {
        let d = strongsplit::gallery::bidirected_complete(n);
        assert!(is_k_arc_strong(&d, n - 1).is_ok());
        let w = is_k_arc_strong(&d, n).unwrap_err();
        assert!(w.is_valid_for(&d, n));
    }
}
