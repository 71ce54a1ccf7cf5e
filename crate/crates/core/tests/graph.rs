use std::collections::BTreeMap;

use ahpp_core::graph::{load_graph, save_graph};
use ahpp_core::{AttributedBipartiteGraph, GraphBuilder};
use proptest::prelude::*;

type Named = BTreeMap<(String, String), u64>;

fn named_edges(g: &AttributedBipartiteGraph) -> (Named, Named) {
    let e = g
        .edges()
        .map(|(u, v, w)| ((g.u_ids().name(u).to_owned(), g.v_ids().name(v).to_owned()), w.to_bits()))
        .collect();
    let a = g
        .attribute_edges()
        .map(|(u, a, w)| ((g.u_ids().name(u).to_owned(), g.attr_ids().name(a).to_owned()), w.to_bits()))
        .collect();
    (e, a)
}

fn graph_strategy() -> impl Strategy<Value = AttributedBipartiteGraph> {
    let weight = prop_oneof![Just(1.0), 1e-6..1e6f64];
    let edges = proptest::collection::vec((0usize..20, 0usize..15, weight.clone()), 1..80);
    let attrs = proptest::collection::vec((0usize..20, 0usize..6, weight), 0..40);
    (edges, attrs).prop_map(|(edges, attrs)| {
        let mut b = GraphBuilder::new();
        for (u, v, w) in edges {
            b.add_edge(&format!("user-{u}"), &format!("item {v}"), w).unwrap();
        }
        for (u, a, w) in attrs {
            b.add_attribute(&format!("user-{u}"), &format!("tag:{a}"), w).unwrap();
        }
        b.build().unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn save_then_load_is_exact(g in graph_strategy()) {
        let dir = tempfile::tempdir().unwrap();
        let (ep, ap) = (dir.path().join("e.tsv"), dir.path().join("a.tsv"));
        save_graph(&g, &ep, &ap).unwrap();
        let h = load_graph(&ep, Some(&ap)).unwrap();
        prop_assert_eq!(named_edges(&g), named_edges(&h));
        h.check_invariants().unwrap();
    }

    #[test]
    fn transposed_views_agree(g in graph_strategy()) {
        for (u, v, w) in g.edges() {
            let back = g.v_neighbors(v);
            let pos = back.targets.binary_search(&u).unwrap();
            prop_assert_eq!(back.weights[pos].to_bits(), w.to_bits());
        }
        let forward: usize = (0..g.v_count()).map(|v| g.v_neighbors(v).len()).sum();
        prop_assert_eq!(forward, g.edge_count());
        for (u, a, w) in g.attribute_edges() {
            let back = g.attr_holders(a);
            let pos = back.targets.binary_search(&u).unwrap();
            prop_assert_eq!(back.weights[pos].to_bits(), w.to_bits());
        }
        let holders: usize = (0..g.attr_count()).map(|a| g.attr_holders(a).len()).sum();
        prop_assert_eq!(holders, g.attr_edge_count());
    }

    #[test]
    fn degrees_are_weight_sums(g in graph_strategy()) {
        let mut du = vec![0.0; g.u_count()];
        let mut dv = vec![0.0; g.v_count()];
        for (u, v, w) in g.edges() {
            du[u] += w;
            dv[v] += w;
        }
        for u in 0..g.u_count() {
            prop_assert!((g.u_degree(u) - du[u]).abs() <= 1e-9 * du[u].max(1.0));
        }
        for v in 0..g.v_count() {
            prop_assert!((g.v_degree(v) - dv[v]).abs() <= 1e-9 * dv[v].max(1.0));
        }
    }
}

#[test]
fn duplicate_lines_sum() {
    let dir = tempfile::tempdir().unwrap();
    let ep = dir.path().join("e.tsv");
    std::fs::write(&ep, "x\ty\t1.5\nx\ty\t2\n").unwrap();
    let g = load_graph(&ep, None).unwrap();
    assert_eq!(g.edge_count(), 1);
    assert_eq!(g.u_degree(0), 3.5);
}

#[test]
fn malformed_input_reports_line() {
    let dir = tempfile::tempdir().unwrap();
    let ep = dir.path().join("e.tsv");
    std::fs::write(&ep, "x\ty\n\nx\tz\t-1\n").unwrap();
    let err = load_graph(&ep, None).unwrap_err();
    assert!(err.to_string().contains(":3"), "{err}");
    assert!(load_graph(&dir.path().join("missing.tsv"), None).is_err());
}
