//! Shared fixtures for the solver benchmarks.

use ahpp_core::graph::{generate_synthetic, SyntheticSpec};
use ahpp_core::AttributedBipartiteGraph;

/// Hub-heavy synthetic graph with `u` U-nodes, ten edges and four
/// attribute edges per U-node on average.
pub fn hub_graph(u: usize, seed: u64) -> AttributedBipartiteGraph {
    generate_synthetic(&SyntheticSpec {
        u_count: u,
        v_count: u * 4 / 5,
        attr_count: (u / 50).max(10),
        edge_count: u * 10,
        attr_edge_count: u * 4,
        seed,
    })
    .expect("benchmark graph parameters are feasible")
}

/// A few spread-out sources.
pub fn sources(g: &AttributedBipartiteGraph, n: usize) -> Vec<usize> {
    let step = (g.u_count() / n.max(1)).max(1);
    (0..g.u_count()).step_by(step).take(n).collect()
}
