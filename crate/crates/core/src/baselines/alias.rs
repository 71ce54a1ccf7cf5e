//! Walker/Vose alias tables for O(1) weighted sampling.

use rand::Rng;

use crate::graph::{AttributedBipartiteGraph, Row};

/// Alias table over one discrete distribution.
#[derive(Debug, Clone, PartialEq)]
pub struct AliasTable {
    prob: Vec<f64>,
    alias: Vec<usize>,
}

/// Builds `(prob, alias)` for `weights` into the output slices.
fn vose(weights: &[f64], prob: &mut [f64], alias: &mut [usize]) {
    let n = weights.len();
    let total: f64 = weights.iter().sum();
    let mut small = Vec::new();
    let mut large = Vec::new();
    for (i, &w) in weights.iter().enumerate() {
        prob[i] = w * n as f64 / total;
        alias[i] = i;
        if prob[i] < 1.0 {
            small.push(i);
        } else {
            large.push(i);
        }
    }
    while let (Some(s), Some(&l)) = (small.pop(), large.last()) {
        alias[s] = l;
        prob[l] -= 1.0 - prob[s];
        if prob[l] < 1.0 {
            large.pop();
            small.push(l);
        }
    }
    // Leftovers are 1 up to rounding.
    for i in small.into_iter().chain(large) {
        prob[i] = 1.0;
    }
}

impl AliasTable {
    /// `None` for an empty or all-zero weight list.
    pub fn new(weights: &[f64]) -> Option<Self> {
        if weights.is_empty() || weights.iter().sum::<f64>() <= 0.0 {
            return None;
        }
        let mut prob = vec![0.0; weights.len()];
        let mut alias = vec![0; weights.len()];
        vose(weights, &mut prob, &mut alias);
        Some(AliasTable { prob, alias })
    }

    pub fn len(&self) -> usize {
        self.prob.len()
    }

    pub fn is_empty(&self) -> bool {
        self.prob.is_empty()
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        let i = rng.random_range(0..self.prob.len());
        if rng.random::<f64>() < self.prob[i] {
            i
        } else {
            self.alias[i]
        }
    }
}

/// One alias table per CSR row, stored flat.
#[derive(Debug, Clone)]
pub struct RowAliases {
    offsets: Vec<usize>,
    prob: Vec<f64>,
    alias: Vec<usize>,
}

impl RowAliases {
    fn build<'a>(rows: impl ExactSizeIterator<Item = Row<'a>>) -> Self {
        let mut offsets = Vec::with_capacity(rows.len() + 1);
        offsets.push(0);
        let mut prob = Vec::new();
        let mut alias = Vec::new();
        for row in rows {
            let lo = prob.len();
            prob.resize(lo + row.len(), 0.0);
            alias.resize(lo + row.len(), 0);
            if !row.is_empty() {
                vose(row.weights, &mut prob[lo..], &mut alias[lo..]);
            }
            offsets.push(prob.len());
        }
        RowAliases {
            offsets,
            prob,
            alias,
        }
    }

    /// Position within `row`'s adjacency, or `None` if the row is empty.
    #[inline]
    pub fn sample<R: Rng + ?Sized>(&self, row: usize, rng: &mut R) -> Option<usize> {
        let (lo, hi) = (self.offsets[row], self.offsets[row + 1]);
        if lo == hi {
            return None;
        }
        let i = rng.random_range(0..hi - lo);
        Some(if rng.random::<f64>() < self.prob[lo + i] {
            i
        } else {
            self.alias[lo + i]
        })
    }
}

/// Alias tables for both hops of both transition kinds.
#[derive(Debug, Clone)]
pub struct WalkTables {
    pub u_to_v: RowAliases,
    pub v_to_u: RowAliases,
    pub u_to_attr: RowAliases,
    pub attr_to_u: RowAliases,
}

impl WalkTables {
    pub fn build(g: &AttributedBipartiteGraph) -> Self {
        WalkTables {
            u_to_v: RowAliases::build((0..g.u_count()).map(|u| g.u_neighbors(u))),
            v_to_u: RowAliases::build((0..g.v_count()).map(|v| g.v_neighbors(v))),
            u_to_attr: RowAliases::build((0..g.u_count()).map(|u| g.u_attributes(u))),
            attr_to_u: RowAliases::build((0..g.attr_count()).map(|a| g.attr_holders(a))),
        }
    }

    /// Tables cached on the graph, built on first use.
    pub fn for_graph(g: &AttributedBipartiteGraph) -> &WalkTables {
        g.caches.walk_tables.get_or_init(|| WalkTables::build(g))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    /// Upper 0.1% quantile of chi-square for small dof, from standard tables.
    fn chi2_critical_p001(dof: usize) -> f64 {
        [10.828, 13.816, 16.266, 18.467, 20.515, 22.458, 24.322, 26.124][dof - 1]
    }

    #[test]
    fn sampling_matches_weights_chi_square() {
        let weights = [1.0, 2.0, 0.5, 4.0, 0.25, 3.0];
        let table = AliasTable::new(&weights).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let n = 100_000;
        let mut counts = [0usize; 6];
        for _ in 0..n {
            counts[table.sample(&mut rng)] += 1;
        }
        let total: f64 = weights.iter().sum();
        let chi2: f64 = weights
            .iter()
            .zip(counts)
            .map(|(w, c)| {
                let expected = n as f64 * w / total;
                (c as f64 - expected).powi(2) / expected
            })
            .sum();
        assert!(chi2 < chi2_critical_p001(weights.len() - 1), "chi2 = {chi2}");
    }

    #[test]
    fn degenerate_inputs() {
        assert!(AliasTable::new(&[]).is_none());
        let one = AliasTable::new(&[3.0]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!((0..100).all(|_| one.sample(&mut rng) == 0));
    }

    #[test]
    fn row_tables_skip_empty_rows() {
        let mut b = crate::graph::GraphBuilder::new();
        b.add_u("empty");
        b.add_edge("x", "v1", 1.0).unwrap();
        b.add_edge("x", "v2", 3.0).unwrap();
        let g = b.build().unwrap();
        let t = WalkTables::build(&g);
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        assert_eq!(t.u_to_v.sample(0, &mut rng), None);
        let hits = (0..40_000)
            .filter(|_| t.u_to_v.sample(1, &mut rng) == Some(1))
            .count();
        assert!((hits as f64 / 40_000.0 - 0.75).abs() < 0.01);
    }
}
