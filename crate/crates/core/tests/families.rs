use lapdiam::families::{valid_specs, FamilyKind, FamilySpec};
use lapdiam::{iso, Graph};

const KINDS: [FamilyKind; 5] = [
    FamilyKind::Gndt,
    FamilyKind::Gndra,
    FamilyKind::HAb,
    FamilyKind::HAbc,
    FamilyKind::PPlusPlus,
];

#[test]
fn every_family_graph_is_connected_with_its_diameter() {
    for kind in KINDS {
        let specs = valid_specs(kind, 12);
        assert!(!specs.is_empty(), "{kind}");
        for spec in specs {
            let g = spec.build().unwrap();
            assert_eq!(g.order(), spec.order(), "{spec}");
            assert!(g.is_connected(), "{spec}");
            assert_eq!(g.diameter().unwrap(), spec.diameter_param(), "{spec}");
        }
    }
}

#[test]
fn mirror_isomorphisms() {
    for kind in [FamilyKind::Gndt, FamilyKind::Gndra] {
        for spec in valid_specs(kind, 10) {
            let g = spec.build().unwrap();
            let m = spec.mirror().unwrap().build().unwrap();
            let map = iso::find_isomorphism(&g, &m).unwrap_or_else(|| panic!("{spec}"));
            assert!(iso::is_isomorphism(&g, &m, &map));
        }
    }
}

#[test]
fn canonicalize_is_idempotent_and_isomorphic() {
    for kind in [FamilyKind::Gndt, FamilyKind::Gndra] {
        for spec in valid_specs(kind, 10) {
            let c = spec.canonicalize().unwrap();
            assert!(c.is_canonical(), "{spec}");
            assert_eq!(c.canonicalize().unwrap(), c);
            assert!(iso::are_isomorphic(&spec.build().unwrap(), &c.build().unwrap()), "{spec}");
        }
    }
    assert_eq!(
        FamilySpec::Gndt { n: 9, d: 4, t: 4 }.canonicalize().unwrap(),
        FamilySpec::Gndt { n: 9, d: 4, t: 2 }
    );
    assert_eq!(
        FamilySpec::Gndra { n: 10, d: 5, r: 4, a: 1 }.canonicalize().unwrap(),
        FamilySpec::Gndra { n: 10, d: 5, r: 2, a: 3 }
    );
    assert!(FamilySpec::PPlusPlus { n: 6, t: 1 }.canonicalize().is_err());
}

#[test]
fn diameter_two_gndt_is_complete_minus_edge() {
    for n in 4..=12 {
        let g = FamilySpec::Gndt { n, d: 2, t: 2 }.build().unwrap();
        let k = Graph::complete(n).unwrap().delete_edge(0, 1).unwrap();
        assert!(iso::are_isomorphic(&g, &k), "n = {n}");
    }
}

#[test]
fn p_plusplus_reductions() {
    for n in 4..=12 {
        let g = FamilySpec::PPlusPlus { n, t: 1 }.build().unwrap();
        let u = g.vertex("u").unwrap();
        let v3 = g.vertex("v3").unwrap();
        assert!(iso::are_isomorphic(&g.delete_edge(u, v3).unwrap(), &Graph::path(n).unwrap()));
        for t in 1..=n - 3 {
            let g = FamilySpec::PPlusPlus { n, t }.build().unwrap();
            let mid = g.vertex(&format!("v{}", t + 1)).unwrap();
            let h = g.add_edges([(g.vertex("u").unwrap(), mid)]).unwrap();
            let target = FamilySpec::Gndt { n, d: n - 2, t: t + 1 }.build().unwrap();
            assert!(iso::are_isomorphic(&h, &target), "n={n}, t={t}");
        }
    }
}

#[test]
fn gndt_minus_edge_is_spanning() {
    let g = FamilySpec::Gndt { n: 9, d: 4, t: 3 }.build().unwrap();
    for (u, v) in g.edges() {
        assert!(g.delete_edge(u, v).unwrap().is_spanning_subgraph(&g, None).unwrap());
    }
}

#[test]
fn spec_examples() {
    let g = FamilySpec::Gndra { n: 10, d: 5, r: 3, a: 2 }.build().unwrap();
    assert_eq!(g.diameter().unwrap(), 5);
    let g = FamilySpec::Gndt { n: 9, d: 4, t: 3 }.build().unwrap();
    assert_eq!(g.diameter().unwrap(), 4);
    let g = FamilySpec::HAb { n: 9, d: 5, t: 3, a: 1, b: 2 }.build().unwrap();
    assert_eq!(g.diameter().unwrap(), 5);
    assert_eq!(g.edge_count(), 5 + 0 + 1 + 3 * 3);
}
