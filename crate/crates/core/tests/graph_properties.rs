use lapdiam::{graph6, iso, spectra, Graph};
use proptest::prelude::*;

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
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

fn arb_graph_with_perm(max_n: usize) -> impl Strategy<Value = (Graph, Vec<usize>)> {
    arb_graph(max_n).prop_flat_map(|g| {
        let n = g.order();
        (Just(g), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn graph6_round_trip(g in arb_graph(12)) {
        let line = graph6::encode(&g);
        prop_assert_eq!(graph6::decode(&line).unwrap(), g);
    }

    #[test]
    fn every_mutation_keeps_adjacency_well_formed(g in arb_graph(10)) {
        prop_assert!(g.is_well_formed());
        prop_assert!(g.complement().is_well_formed());
        prop_assert_eq!(g.complement().complement(), g.clone());
        if let Some(&(u, v)) = g.edges().first() {
            let h = g.delete_edge(u, v).unwrap();
            prop_assert!(h.is_well_formed());
            prop_assert_eq!(h.add_edges([(u, v)]).unwrap(), g);
        }
    }

    #[test]
    fn diameter_never_drops_under_edge_deletion(g in arb_graph(9)) {
        prop_assume!(g.is_connected());
        let d = g.diameter().unwrap();
        for (u, v) in g.edges() {
            let h = g.delete_edge(u, v).unwrap();
            if h.is_connected() {
                prop_assert!(h.diameter().unwrap() >= d);
            }
        }
    }

    #[test]
    fn distance_matrix_is_a_metric(g in arb_graph(9)) {
        let dm = g.distances();
        let n = g.order();
        for u in 0..n {
            prop_assert_eq!(dm.get(u, u), Some(0));
            for v in 0..n {
                prop_assert_eq!(dm.get(u, v), dm.get(v, u));
                for w in 0..n {
                    if let (Some(a), Some(b), Some(c)) = (dm.get(u, v), dm.get(v, w), dm.get(u, w)) {
                        prop_assert!(c <= a + b);
                    }
                }
            }
        }
    }

    #[test]
    fn spanning_subgraph_is_reflexive_and_transitive((g, perm) in arb_graph_with_perm(8)) {
        prop_assert!(g.is_spanning_subgraph(&g, None).unwrap());
        // H: g minus an edge, relabeled; K: complete graph.
        let n = g.order();
        let sub = match g.edges().first() {
            Some(&(u, v)) => g.delete_edge(u, v).unwrap(),
            None => g.clone(),
        };
        prop_assert!(sub.is_spanning_subgraph(&g, None).unwrap());
        let relabeled = g.permute(&perm);
        // old vertex perm[i] is new vertex i, so map old -> new is the inverse.
        let mut to_new = vec![0; n];
        for (new, &old) in perm.iter().enumerate() {
            to_new[old] = new;
        }
        prop_assert!(g.is_spanning_subgraph(&relabeled, Some(&to_new)).unwrap());
        prop_assert!(sub.is_spanning_subgraph(&relabeled, Some(&to_new)).unwrap());
        let k = Graph::complete(n).unwrap();
        prop_assert!(relabeled.is_spanning_subgraph(&k, None).unwrap());
        prop_assert!(sub.is_spanning_subgraph(&k, Some(&to_new)).unwrap());
    }

    #[test]
    fn canonical_form_ignores_labels((g, perm) in arb_graph_with_perm(9)) {
        let h = g.permute(&perm);
        prop_assert_eq!(iso::canonical_form(&g), iso::canonical_form(&h));
        let map = iso::find_isomorphism(&g, &h).expect("relabelings are isomorphic");
        prop_assert!(iso::is_isomorphism(&g, &h, &map));
    }

    #[test]
    fn laplacian_spectrum_invariants(g in arb_graph(12)) {
        let s = spectra::laplacian_spectrum(&g);
        let n = g.order() as f64;
        let tol = s.tol();
        prop_assert!(tol <= 1e-8);
        prop_assert!(s.values().windows(2).all(|w| w[0] >= w[1]));
        prop_assert!(s.values().iter().all(|&x| x >= -tol && x <= n + tol));
        prop_assert!(s.nth(g.order()).abs() <= tol);
        prop_assert!((s.sum() - 2.0 * g.edge_count() as f64).abs() <= n * tol);
    }

    #[test]
    fn char_poly_roots_pair_with_numeric_spectrum(g in arb_graph(12)) {
        let p = spectra::laplacian_char_poly(&g);
        prop_assert!(p.is_monic());
        prop_assert_eq!(p.coeff(0), 0.into());
        let s = spectra::laplacian_spectrum(&g);
        // Every numeric value is within 1e-7 of a root: the exact count in a
        // rational window around it is positive.
        let counter = lapdiam::RootCounter::new(p).unwrap();
        for &x in s.values() {
            let lo = lapdiam::poly::rational(((x - 1e-7) * 1e9).floor() as i64, 1_000_000_000);
            let hi = lapdiam::poly::rational(((x + 1e-7) * 1e9).ceil() as i64, 1_000_000_000);
            prop_assert!(counter.count_closed(&lo, &hi) >= 1);
        }
        prop_assert_eq!(counter.multiplicity(&lapdiam::poly::integer(0)), g.component_count());
    }
}

#[test]
fn diameter_of_paths() {
    for n in 2..40 {
        assert_eq!(Graph::path(n).unwrap().diameter().unwrap(), n - 1);
    }
}
