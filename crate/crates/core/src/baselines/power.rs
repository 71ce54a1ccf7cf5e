use crate::error::{Error, Result};
use crate::graph::AttributedBipartiteGraph;
use crate::params::QueryParams;
use crate::score::ScoreVector;
use crate::transition::Propagator;

/// Minimum truncation used for reference scores.
pub const GROUND_TRUTH_MIN_ITERATIONS: usize = 150;

/// Iterations after which power iteration is within `epsilon`:
/// `ceil(log_{1/(1-alpha)}(1/epsilon))`, at least 1.
pub fn pi_iterations_for(params: &QueryParams) -> usize {
    (params.decay_log(1.0 / params.epsilon).ceil() as usize).max(1)
}

/// `max(150, ceil(log_{1/(1-alpha)}(100/epsilon)))`, i.e. a hundredfold
/// safety margin over the requested error.
pub fn ground_truth_iterations(params: &QueryParams) -> usize {
    let t = params.decay_log(100.0 / params.epsilon).ceil() as usize;
    t.max(GROUND_TRUTH_MIN_ITERATIONS)
}

/// Runs `pi <- (1 - alpha) * pi * P + alpha * e_source` for `iterations`
/// rounds starting from `e_source`, using matrix-free steps.
pub fn power_iteration(
    g: &AttributedBipartiteGraph,
    params: &QueryParams,
    source: usize,
    iterations: usize,
) -> Result<ScoreVector> {
    params.validate()?;
    g.check_source(source)?;
    if iterations == 0 {
        return Err(Error::param("power iteration needs at least one iteration"));
    }
    let mut prop = Propagator::new(g, params.transition());
    let mut pi = vec![0.0; g.u_count()];
    pi[source] = 1.0;
    let mut next = vec![0.0; g.u_count()];
    for _ in 0..iterations {
        prop.step_dense(&pi, &mut next);
        for x in next.iter_mut() {
            *x *= 1.0 - params.alpha;
        }
        next[source] += params.alpha;
        std::mem::swap(&mut pi, &mut next);
    }
    Ok(ScoreVector::new(source, pi))
}

/// Reference scores: power iteration with [`ground_truth_iterations`].
pub fn ground_truth(g: &AttributedBipartiteGraph, params: &QueryParams, source: usize) -> Result<ScoreVector> {
    power_iteration(g, params, source, ground_truth_iterations(params))
}
