use std::collections::{BTreeMap, BTreeSet};

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{AttributedBipartiteGraph, GraphBuilder};
use crate::score::ScoreVector;

/// A graph with some `U`-`V` edges deleted, plus the deleted pairs.
#[derive(Debug, Clone)]
pub struct LinkSplit {
    pub held_out: AttributedBipartiteGraph,
    /// `(u, v)` index pairs, sorted.
    pub removed: Vec<(usize, usize)>,
}

/// Deletes `round(fraction * |E|)` edges chosen uniformly without
/// replacement. Node ids and indices are unchanged; attribute edges are kept.
pub fn split_edges(g: &AttributedBipartiteGraph, fraction: f64, seed: u64) -> Result<LinkSplit> {
    if !(0.0..=1.0).contains(&fraction) {
        return Err(Error::param(format!("removal fraction must lie in [0, 1], got {fraction}")));
    }
    let edges: Vec<(usize, usize, f64)> = g.edges().collect();
    let count = (fraction * edges.len() as f64).round() as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut drop = vec![false; edges.len()];
    for i in sample(&mut rng, edges.len(), count) {
        drop[i] = true;
    }

    let mut b = GraphBuilder::new();
    for u in 0..g.u_count() {
        b.add_u(g.u_ids().name(u));
    }
    for v in 0..g.v_count() {
        b.add_v(g.v_ids().name(v));
    }
    for a in 0..g.attr_count() {
        b.add_attr(g.attr_ids().name(a));
    }
    let mut removed = Vec::with_capacity(count);
    for (&(u, v, w), &d) in edges.iter().zip(&drop) {
        if d {
            removed.push((u, v));
        } else {
            b.add_edge_indexed(u, v, w)?;
        }
    }
    for (u, a, w) in g.attribute_edges() {
        b.add_attribute_indexed(u, a, w)?;
    }
    removed.sort_unstable();
    Ok(LinkSplit {
        held_out: b.build()?,
        removed,
    })
}

/// Fraction of `removed` recovered by linking every removed edge's
/// `U`-endpoint `u` to the `V`-neighbors of its `k` most similar other
/// U-nodes. Candidates are deduplicated and never include an edge already
/// present in `g`. The query itself is not counted among its similar nodes.
pub fn link_prediction<F>(
    g: &AttributedBipartiteGraph,
    removed: &[(usize, usize)],
    mut solver: F,
    k: usize,
) -> Result<f64>
where
    F: FnMut(usize) -> Result<ScoreVector>,
{
    let truth: BTreeSet<(usize, usize)> = removed.iter().copied().collect();
    if truth.is_empty() || k == 0 {
        return Ok(0.0);
    }
    let mut by_u: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &(u, v) in &truth {
        by_u.entry(u).or_default().push(v);
    }
    let mut hits = 0usize;
    for (&u, targets) in &by_u {
        let similar = solver(u)?.top_k_excluding(k, u);
        let own = g.u_neighbors(u);
        let mut candidates = BTreeSet::new();
        for s in similar {
            for (v, _) in g.u_neighbors(s).iter() {
                if own.targets.binary_search(&v).is_err() {
                    candidates.insert(v);
                }
            }
        }
        hits += targets.iter().filter(|v| candidates.contains(v)).count();
    }
    Ok(hits as f64 / truth.len() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn split_keeps_nodes() {
        let g = crate::graph::generate_synthetic(&crate::graph::SyntheticSpec {
            u_count: 40,
            v_count: 30,
            attr_count: 5,
            edge_count: 200,
            attr_edge_count: 50,
            seed: 3,
        })
        .unwrap();
        let s = split_edges(&g, 0.2, 9).unwrap();
        assert_eq!(s.removed.len(), 40);
        assert_eq!(s.held_out.edge_count(), 160);
        assert_eq!(s.held_out.u_count(), 40);
        assert_eq!(s.held_out.v_count(), 30);
        assert_eq!(s.held_out.attr_edge_count(), 50);
        for &(u, v) in &s.removed {
            assert!(s.held_out.u_neighbors(u).targets.binary_search(&v).is_err());
            assert!(g.u_neighbors(u).targets.binary_search(&v).is_ok());
        }
        let again = split_edges(&g, 0.2, 9).unwrap();
        assert_eq!(s.removed, again.removed);
    }

    #[test]
    fn recovers_forced_edge() {
        // u0 lost (u0, y); its most similar node u1 is adjacent to y.
        let mut b = GraphBuilder::new();
        b.add_edge("u0", "x", 1.0).unwrap();
        b.add_edge("u1", "x", 1.0).unwrap();
        b.add_edge("u1", "y", 1.0).unwrap();
        b.add_edge("u2", "z", 1.0).unwrap();
        let g = b.build().unwrap();
        let y = g.v_ids().get("y").unwrap();
        let scores = |s: usize| Ok(ScoreVector::new(s, vec![0.5, 0.3, 0.1]));
        assert_eq!(link_prediction(&g, &[(0, y)], scores, 1).unwrap(), 1.0);
        assert_eq!(link_prediction(&g, &[(0, y)], scores, 0).unwrap(), 0.0);
    }
}
