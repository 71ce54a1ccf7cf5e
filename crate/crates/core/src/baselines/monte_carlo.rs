use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::alias::WalkTables;
use crate::error::{Error, Result};
use crate::graph::AttributedBipartiteGraph;
use crate::params::QueryParams;
use crate::score::ScoreVector;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McParams {
    /// Failure probability `p_f` of the per-entry error bound.
    pub failure_probability: f64,
    /// Explicit walk count overriding the default formula.
    pub walks: Option<usize>,
}

impl Default for McParams {
    fn default() -> Self {
        McParams {
            failure_probability: 1e-6,
            walks: None,
        }
    }
}

impl McParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.failure_probability > 0.0 && self.failure_probability < 1.0) {
            return Err(Error::param(format!(
                "failure probability must lie in (0, 1), got {}",
                self.failure_probability
            )));
        }
        if self.walks == Some(0) {
            return Err(Error::param("walk count must be at least 1"));
        }
        Ok(())
    }

    /// `ceil(2 (1 + eps/3) ln(|U| / p_f) / eps^2)` unless overridden.
    pub fn walk_count(&self, epsilon: f64, u_count: usize) -> usize {
        if let Some(w) = self.walks {
            return w;
        }
        let eps = epsilon;
        let n = 2.0 * (1.0 + eps / 3.0) * (u_count as f64 / self.failure_probability).ln() / (eps * eps);
        n.ceil().max(1.0) as usize
    }
}

/// Simulates restart walks from `source` and returns the empirical stop
/// distribution.
///
/// Each step stops with probability `alpha`. Otherwise, with probability
/// `beta` the walk hops through an attribute, else through a `V` node. A
/// walk that draws a hop its current node cannot make is absorbed and
/// counted nowhere, which mirrors the sub-stochastic transition.
pub fn monte_carlo(
    g: &AttributedBipartiteGraph,
    params: &QueryParams,
    mc: &McParams,
    source: usize,
    seed: u64,
) -> Result<ScoreVector> {
    params.validate()?;
    mc.validate()?;
    g.check_source(source)?;
    let tables = WalkTables::for_graph(g);
    let walks = mc.walk_count(params.epsilon, g.u_count());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut stops = vec![0u64; g.u_count()];

    for _ in 0..walks {
        if let Some(end) = walk(g, tables, params, source, &mut rng) {
            stops[end] += 1;
        }
    }
    let scores = stops.iter().map(|&c| c as f64 / walks as f64).collect();
    Ok(ScoreVector::new(source, scores))
}

fn walk<R: Rng>(
    g: &AttributedBipartiteGraph,
    t: &WalkTables,
    params: &QueryParams,
    source: usize,
    rng: &mut R,
) -> Option<usize> {
    let mut cur = source;
    loop {
        if rng.random::<f64>() < params.alpha {
            return Some(cur);
        }
        cur = if rng.random::<f64>() < params.beta {
            let a = g.u_attributes(cur).targets[t.u_to_attr.sample(cur, rng)?];
            g.attr_holders(a).targets[t.attr_to_u.sample(a, rng)?]
        } else {
            let v = g.u_neighbors(cur).targets[t.u_to_v.sample(cur, rng)?];
            g.v_neighbors(v).targets[t.v_to_u.sample(v, rng)?]
        };
    }
}
