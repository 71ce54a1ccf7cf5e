use crate::error::{Error, Result};
use crate::graph::AttributedBipartiteGraph;
use crate::params::QueryParams;
use crate::push::{NoObserver, PushObserver, PushState, PushStats};
use crate::score::ScoreVector;

/// `epsilon / (|E| + |A|)`, the threshold unit that yields an
/// `epsilon`-accurate answer. `|A|` is the number of attributes.
pub fn default_r_max(g: &AttributedBipartiteGraph, params: &QueryParams) -> f64 {
    params.epsilon / (g.edge_count() + g.attr_count()).max(1) as f64
}

/// Forward push with the default `r_max`.
pub fn forward_push(g: &AttributedBipartiteGraph, params: &QueryParams, source: usize) -> Result<ScoreVector> {
    let r_max = default_r_max(g, params);
    forward_push_with(g, params, source, r_max, &mut NoObserver).map(|(s, _)| s)
}

/// Forward push over `U` only: a selected node converts `alpha` of its
/// residue to reserve and hands the rest directly to its two-hop structural
/// neighbors and attribute co-holders.
///
/// A node is selected while `r(u_i) > r_max * (|N(u_i)| + |A(u_i)|)`. Work
/// proceeds in rounds. Every node above threshold at the start of a round
/// gives up its residue at once, then all of them push in FIFO order. Mass
/// arriving during a round is pushed in a later one.
pub fn forward_push_with<O: PushObserver>(
    g: &AttributedBipartiteGraph,
    params: &QueryParams,
    source: usize,
    r_max: f64,
    observer: &mut O,
) -> Result<(ScoreVector, PushStats)> {
    params.validate()?;
    g.check_source(source)?;
    if !(r_max > 0.0 && r_max.is_finite()) {
        return Err(Error::param(format!("r_max must be positive, got {r_max}")));
    }
    let (alpha, beta) = (params.alpha, params.beta);
    let threshold = |u: usize| r_max * g.u_fanout(u) as f64;

    let mut st = PushState::with_sides(g, source, 0.0, false);
    let mut stats = PushStats::default();
    if st.residue_u[source] > threshold(source) {
        st.enqueue(source);
    }
    observer.on_boundary(&st);

    let mut batch: Vec<(usize, f64)> = Vec::new();
    while !st.frontier.is_empty() {
        stats.rounds += 1;
        batch.clear();
        for u in st.take_frontier() {
            batch.push((u, std::mem::take(&mut st.residue_u[u])));
        }
        for &(ui, r) in &batch {
            stats.u_pushes += 1;
            st.reserve[ui] += alpha * r;
            let rho = (1.0 - alpha) * r;
            let du = g.u_degree(ui);
            for (v, w_uv) in g.u_neighbors(ui).iter() {
                let dv = g.v_degree(v);
                let nv = g.v_neighbors(v);
                stats.operations += nv.len();
                for (uj, w_vu) in nv.iter() {
                    let inc = (1.0 - beta) * (w_uv * w_vu) / (du * dv) * rho;
                    add_residue(&mut st, uj, inc, threshold(uj));
                }
            }
            let su = g.u_attr_weight_sum(ui);
            for (a, w_ua) in g.u_attributes(ui).iter() {
                let sa = g.attr_weight_sum(a);
                let holders = g.attr_holders(a);
                stats.operations += holders.len();
                for (uj, w_ja) in holders.iter() {
                    let inc = beta * w_ua * w_ja * rho / (su * sa);
                    add_residue(&mut st, uj, inc, threshold(uj));
                }
            }
        }
        observer.on_boundary(&st);
    }
    Ok((ScoreVector::new(source, st.reserve), stats))
}

#[inline]
fn add_residue(st: &mut PushState, u: usize, inc: f64, threshold: f64) {
    st.residue_u[u] += inc;
    st.note_support(u);
    if st.residue_u[u] > threshold {
        st.enqueue(u);
    }
}
