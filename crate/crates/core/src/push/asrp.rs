use super::alternating::{Engine, PushOutcome};
use super::lambda::cached_lambda;
use super::state::{NoObserver, PushObserver};
use crate::error::{Error, Result};
use crate::graph::AttributedBipartiteGraph;
use crate::params::QueryParams;
use crate::score::ScoreVector;

/// Power-iteration rounds used for the default lambda estimate.
pub const DEFAULT_LAMBDA_ITERATIONS: usize = 30;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsrpParams {
    /// Bound on every column sum of the AHPP matrix; at least 1.
    pub lambda: f64,
    /// Iterations used when lambda was estimated.
    pub pi_estimation_t: usize,
}

impl AsrpParams {
    /// Explicit lambda, e.g. from a command-line override.
    pub fn with_lambda(lambda: f64) -> Result<Self> {
        let p = AsrpParams {
            lambda,
            pi_estimation_t: DEFAULT_LAMBDA_ITERATIONS,
        };
        p.validate()?;
        Ok(p)
    }

    /// Lambda from the cached all-ones power-iteration estimate, raised to
    /// 1 if the estimate falls below it.
    pub fn estimate(g: &AttributedBipartiteGraph, params: &QueryParams, iterations: usize) -> Result<Self> {
        let lambda = cached_lambda(g, params, iterations)?.max(1.0);
        Ok(AsrpParams {
            lambda,
            pi_estimation_t: iterations,
        })
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.lambda >= 1.0 && self.lambda.is_finite()) {
            return Err(Error::param(format!("lambda must be finite and >= 1, got {}", self.lambda)));
        }
        if self.pi_estimation_t == 0 {
            return Err(Error::param("pi_estimation_t must be at least 1"));
        }
        Ok(())
    }
}

pub fn asrp(
    g: &AttributedBipartiteGraph,
    params: &QueryParams,
    source: usize,
    asrp_params: &AsrpParams,
) -> Result<ScoreVector> {
    asrp_with(g, params, source, asrp_params, &mut NoObserver).map(|o| o.scores)
}

/// ASRP: alternating push with the flat threshold `epsilon / lambda`, then
/// synchronous rounds once the operation budget is spent.
///
/// After every asynchronous round the budget
/// `2 (|E| + |E_A|) log_{1/(1-alpha)}(1 / (lambda * max_i r(u_i)))` is
/// compared with `n_p`. While `lambda * max r >= 1` the budget is not
/// defined and no switch happens. Once switched, each round pushes every
/// U-node holding any residue, until all residues are at most
/// `epsilon / lambda`.
pub fn asrp_with<O: PushObserver>(
    g: &AttributedBipartiteGraph,
    params: &QueryParams,
    source: usize,
    asrp_params: &AsrpParams,
    observer: &mut O,
) -> Result<PushOutcome> {
    params.validate()?;
    asrp_params.validate()?;
    g.check_source(source)?;
    let lambda = asrp_params.lambda;
    let eps_f = params.epsilon / lambda;
    let budget_scale = 2.0 * (g.edge_count() + g.attr_edge_count()) as f64;

    let mut engine = Engine::new(g, params, source, eps_f);
    if engine.st.residue_u[source] > eps_f {
        engine.st.enqueue(source);
    }
    observer.on_boundary(&engine.st);

    let mut switch_at = None;
    while !engine.st.frontier.is_empty() {
        engine.round(|_| eps_f);
        observer.on_boundary(&engine.st);
        if engine.st.frontier.is_empty() {
            break;
        }
        let max_r = engine.frontier_max_residue();
        let scaled = lambda * max_r;
        if scaled < 1.0 && engine.st.n_p as f64 >= budget_scale * params.decay_log(1.0 / scaled) {
            switch_at = Some(max_r);
            break;
        }
    }

    if let Some(max_r) = switch_at {
        engine.stats.switched = true;
        engine.stats.residue_at_switch = max_r;
        log::debug!(
            "asrp: switching to synchronous rounds after n_p = {} (max residue {max_r:.3e})",
            engine.st.n_p
        );
        engine.queue_all_positive();
        while engine.frontier_max_residue() > eps_f {
            engine.round(|_| 0.0);
            engine.stats.sync_rounds += 1;
            observer.on_boundary(&engine.st);
        }
    }
    Ok(engine.finish())
}
