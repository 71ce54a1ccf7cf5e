//! Deterministic synthetic graph generators.

use std::collections::HashSet;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{AttributedBipartiteGraph, GraphBuilder};
use crate::error::{Error, Result};

const ZIPF_EXPONENT: f64 = 1.0;
const WEIGHT_RANGE: (f64, f64) = (0.5, 2.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SyntheticSpec {
    pub u_count: usize,
    pub v_count: usize,
    pub attr_count: usize,
    pub edge_count: usize,
    pub attr_edge_count: usize,
    pub seed: u64,
}

/// Inverse-CDF sampler over ranks `0..n` with `P(k) ∝ (k + 1)^-s`.
struct Zipf {
    cdf: Vec<f64>,
}

impl Zipf {
    fn new(n: usize, exponent: f64) -> Self {
        let mut acc = 0.0;
        let mut cdf: Vec<f64> = (0..n)
            .map(|k| {
                acc += ((k + 1) as f64).powf(-exponent);
                acc
            })
            .collect();
        for c in &mut cdf {
            *c /= acc;
        }
        Zipf { cdf }
    }

    fn sample<R: Rng>(&self, rng: &mut R) -> usize {
        let x: f64 = rng.random();
        self.cdf.partition_point(|&c| c < x).min(self.cdf.len() - 1)
    }
}

fn weight<R: Rng>(rng: &mut R) -> f64 {
    rng.random_range(WEIGHT_RANGE.0..=WEIGHT_RANGE.1)
}

/// Draws `count` distinct pairs with a uniform left endpoint and a
/// Zipf-distributed right endpoint.
fn skewed_pairs<R: Rng>(
    rng: &mut R,
    left: usize,
    right: usize,
    count: usize,
    what: &str,
) -> Result<Vec<(usize, usize, f64)>> {
    if count == 0 {
        return Ok(Vec::new());
    }
    let zipf = Zipf::new(right, ZIPF_EXPONENT);
    let mut seen = HashSet::with_capacity(count);
    let mut out = Vec::with_capacity(count);
    let max_attempts = 100 * count + 10_000;
    let mut attempts = 0;
    while out.len() < count {
        attempts += 1;
        if attempts > max_attempts {
            return Err(Error::param(format!(
                "could only place {} of {count} distinct {what} under the skewed distribution",
                out.len()
            )));
        }
        let pair = (rng.random_range(0..left), zipf.sample(rng));
        if seen.insert(pair) {
            out.push((pair.0, pair.1, weight(rng)));
        }
    }
    Ok(out)
}

/// Random attributed bipartite graph with hub-heavy `V` and attribute
/// degree distributions. `U` endpoints are uniform; `V` and attribute
/// endpoints follow a Zipf law with exponent 1, so low indices are hubs.
/// Weights are uniform on `[0.5, 2.0]`. Output depends only on `spec`.
pub fn generate_synthetic(spec: &SyntheticSpec) -> Result<AttributedBipartiteGraph> {
    if spec.u_count == 0 || spec.v_count == 0 {
        return Err(Error::param("u_count and v_count must be positive"));
    }
    if spec.edge_count > spec.u_count * spec.v_count {
        return Err(Error::param(format!(
            "{} edges do not fit in a {}x{} bipartite graph",
            spec.edge_count, spec.u_count, spec.v_count
        )));
    }
    if spec.attr_edge_count > spec.u_count * spec.attr_count {
        return Err(Error::param(format!(
            "{} attribute edges do not fit with {} U-nodes and {} attributes",
            spec.attr_edge_count, spec.u_count, spec.attr_count
        )));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut b = GraphBuilder::with_numbered_nodes(spec.u_count, spec.v_count, spec.attr_count);
    for (u, v, w) in skewed_pairs(&mut rng, spec.u_count, spec.v_count, spec.edge_count, "edges")? {
        b.add_edge_indexed(u, v, w)?;
    }
    for (u, a, w) in skewed_pairs(
        &mut rng,
        spec.u_count,
        spec.attr_count,
        spec.attr_edge_count,
        "attribute edges",
    )? {
        b.add_attribute_indexed(u, a, w)?;
    }
    b.build()
}

/// Block-structured graph with planted `U` communities.
///
/// `U`, `V` and the attributes are each split into `clusters` contiguous
/// blocks; U-node `i` belongs to cluster `i % clusters`. Each U-node draws
/// `edges_per_u` distinct `V` neighbors and `attrs_per_u` distinct
/// attributes, each from its own block with probability `intra_prob` and
/// uniformly otherwise.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlantedClusters {
    pub u_count: usize,
    pub v_count: usize,
    pub attr_count: usize,
    pub clusters: usize,
    pub edges_per_u: usize,
    pub attrs_per_u: usize,
    pub intra_prob: f64,
    pub seed: u64,
}

/// Returns the graph and the cluster label of every U-node.
pub fn generate_clustered(
    spec: &PlantedClusters,
) -> Result<(AttributedBipartiteGraph, Vec<usize>)> {
    let k = spec.clusters;
    if k == 0 || spec.u_count < k || spec.v_count < k || (spec.attr_count > 0 && spec.attr_count < k)
    {
        return Err(Error::param("each cluster needs at least one node in every partition"));
    }
    if spec.edges_per_u > spec.v_count / k || (spec.attr_count > 0 && spec.attrs_per_u > spec.attr_count / k)
    {
        return Err(Error::param("per-node degree exceeds the block size"));
    }
    if spec.attr_count == 0 && spec.attrs_per_u > 0 {
        return Err(Error::param("attrs_per_u > 0 requires attributes"));
    }
    if !(0.0..=1.0).contains(&spec.intra_prob) {
        return Err(Error::param("intra_prob must lie in [0, 1]"));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut b = GraphBuilder::with_numbered_nodes(spec.u_count, spec.v_count, spec.attr_count);
    let labels: Vec<usize> = (0..spec.u_count).map(|u| u % k).collect();
    let block = |n: usize, c: usize| (c * n / k)..((c + 1) * n / k);

    let draw = |rng: &mut ChaCha8Rng, n: usize, c: usize, want: usize| {
        let mut picked = Vec::with_capacity(want);
        while picked.len() < want {
            let x = if rng.random_bool(spec.intra_prob) {
                rng.random_range(block(n, c))
            } else {
                rng.random_range(0..n)
            };
            if !picked.contains(&x) {
                picked.push(x);
            }
        }
        picked
    };

    for u in 0..spec.u_count {
        let c = labels[u];
        for v in draw(&mut rng, spec.v_count, c, spec.edges_per_u) {
            let w = weight(&mut rng);
            b.add_edge_indexed(u, v, w)?;
        }
        if spec.attr_count > 0 {
            for a in draw(&mut rng, spec.attr_count, c, spec.attrs_per_u) {
                let w = weight(&mut rng);
                b.add_attribute_indexed(u, a, w)?;
            }
        }
    }
    Ok((b.build()?, labels))
}
