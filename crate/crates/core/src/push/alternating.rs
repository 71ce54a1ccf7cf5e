use super::state::{PushObserver, PushState, PushStats};
use crate::error::{Error, Result};
use crate::graph::AttributedBipartiteGraph;
use crate::params::QueryParams;
use crate::score::ScoreVector;

/// Residue level a U-node must exceed to be pushed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Threshold {
    /// `r_max * (|N(u)| + |A(u)|)`, as in forward push.
    PerFanout(f64),
    /// The same level for every node.
    Flat(f64),
}

impl Threshold {
    #[inline]
    pub fn for_node(&self, g: &AttributedBipartiteGraph, u: usize) -> f64 {
        match *self {
            Threshold::PerFanout(r_max) => r_max * g.u_fanout(u) as f64,
            Threshold::Flat(t) => t,
        }
    }

    fn validate(&self) -> Result<()> {
        let x = match *self {
            Threshold::PerFanout(x) | Threshold::Flat(x) => x,
        };
        if x > 0.0 && x.is_finite() {
            Ok(())
        } else {
            Err(Error::param(format!("push threshold must be positive, got {x}")))
        }
    }
}

#[derive(Debug, Clone)]
pub struct PushOutcome {
    pub scores: ScoreVector,
    pub stats: PushStats,
    pub final_state: PushState,
}

/// Round-based push machinery shared by APP and ASRP.
pub(crate) struct Engine<'g> {
    pub(crate) g: &'g AttributedBipartiteGraph,
    alpha: f64,
    beta: f64,
    pub(crate) st: PushState,
    pub(crate) stats: PushStats,
}

impl<'g> Engine<'g> {
    pub(crate) fn new(g: &'g AttributedBipartiteGraph, params: &QueryParams, source: usize, epsilon_f: f64) -> Self {
        Engine {
            g,
            alpha: params.alpha,
            beta: params.beta,
            st: PushState::new(g, source, epsilon_f),
            stats: PushStats::default(),
        }
    }

    /// One full alternation: every queued U-node pushes to `V` and the
    /// attributes, then every touched `V` node and attribute pushes back to
    /// `U`. Nodes that end above `threshold` are queued for the next round.
    pub(crate) fn round(&mut self, threshold: impl Fn(usize) -> f64) {
        let g = self.g;
        let (alpha, beta) = (self.alpha, self.beta);
        let st = &mut self.st;
        self.stats.rounds += 1;

        for ui in st.take_frontier() {
            let r = std::mem::take(&mut st.residue_u[ui]);
            st.reserve[ui] += alpha * r;
            let r = (1.0 - alpha) * r;
            st.n_p += g.u_fanout(ui);
            self.stats.u_pushes += 1;

            let du = g.u_degree(ui);
            if du > 0.0 {
                for (v, w) in g.u_neighbors(ui).iter() {
                    let inc = (1.0 - beta) * w / du * r;
                    if inc > 0.0 {
                        if st.residue_v[v] == 0.0 {
                            st.v_touched.push(v);
                        }
                        st.residue_v[v] += inc;
                    }
                }
            }
            let su = g.u_attr_weight_sum(ui);
            if su > 0.0 {
                for (a, w) in g.u_attributes(ui).iter() {
                    let inc = beta * w / su * r;
                    if inc > 0.0 {
                        if st.residue_a[a] == 0.0 {
                            st.a_touched.push(a);
                        }
                        st.residue_a[a] += inc;
                    }
                }
            }
        }

        let v_touched = std::mem::take(&mut st.v_touched);
        for &v in &v_touched {
            let r = std::mem::take(&mut st.residue_v[v]);
            let dv = g.v_degree(v);
            let nbrs = g.v_neighbors(v);
            st.n_p += nbrs.len();
            for (uj, w) in nbrs.iter() {
                receive(st, uj, w / dv * r, threshold(uj));
            }
        }
        st.v_touched = v_touched;
        st.v_touched.clear();

        let a_touched = std::mem::take(&mut st.a_touched);
        for &a in &a_touched {
            let r = std::mem::take(&mut st.residue_a[a]);
            let sa = g.attr_weight_sum(a);
            let holders = g.attr_holders(a);
            st.n_p += holders.len();
            for (uj, w) in holders.iter() {
                receive(st, uj, w / sa * r, threshold(uj));
            }
        }
        st.a_touched = a_touched;
        st.a_touched.clear();

        self.stats.operations = st.n_p;
    }

    pub(crate) fn frontier_max_residue(&self) -> f64 {
        self.st
            .frontier
            .iter()
            .map(|&u| self.st.residue_u[u])
            .fold(0.0, f64::max)
    }

    /// Requeues every U-node that currently holds positive residue.
    pub(crate) fn queue_all_positive(&mut self) {
        let st = &mut self.st;
        st.take_frontier();
        let support = std::mem::take(&mut st.u_support);
        let mut kept = Vec::with_capacity(support.len());
        for u in support {
            if st.residue_u[u] > 0.0 {
                kept.push(u);
                st.enqueue(u);
            } else {
                st.in_support[u] = false;
            }
        }
        st.u_support = kept;
    }

    pub(crate) fn finish(mut self) -> PushOutcome {
        self.st.take_frontier();
        PushOutcome {
            scores: ScoreVector::new(self.st.source, self.st.reserve.clone()),
            stats: self.stats,
            final_state: self.st,
        }
    }
}

#[inline]
fn receive(st: &mut PushState, u: usize, inc: f64, threshold: f64) {
    st.residue_u[u] += inc;
    st.note_support(u);
    if st.residue_u[u] > threshold {
        st.enqueue(u);
    }
}

/// APP with `r(u_i) > r_max * (|N(u_i)| + |A(u_i)|)` as the selection rule.
pub fn app(g: &AttributedBipartiteGraph, params: &QueryParams, source: usize, r_max: f64) -> Result<ScoreVector> {
    app_with(g, params, source, Threshold::PerFanout(r_max), &mut super::NoObserver).map(|o| o.scores)
}

/// APP under an arbitrary threshold rule, reporting every round boundary to
/// `observer`. Runs until no U-node exceeds its threshold.
pub fn app_with<O: PushObserver>(
    g: &AttributedBipartiteGraph,
    params: &QueryParams,
    source: usize,
    threshold: Threshold,
    observer: &mut O,
) -> Result<PushOutcome> {
    params.validate()?;
    g.check_source(source)?;
    threshold.validate()?;
    let flat = match threshold {
        Threshold::Flat(t) => t,
        Threshold::PerFanout(_) => 0.0,
    };
    let mut engine = Engine::new(g, params, source, flat);
    if 1.0 > threshold.for_node(g, source) {
        engine.st.enqueue(source);
    }
    observer.on_boundary(&engine.st);
    while !engine.st.frontier.is_empty() {
        engine.round(|u| threshold.for_node(g, u));
        observer.on_boundary(&engine.st);
    }
    Ok(engine.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::GraphBuilder;

    #[test]
    fn lone_node_keeps_alpha() {
        let mut b = GraphBuilder::new();
        b.add_u("only");
        let g = b.build().unwrap();
        let p = QueryParams::new(0.15, 0.35, 1e-6).unwrap();
        let s = app(&g, &p, 0, 1e-6).unwrap();
        assert_eq!(s.scores, vec![0.15]);
    }

    #[test]
    fn residues_flushed_between_rounds() {
        let mut b = GraphBuilder::new();
        for (u, v) in [("a", "x"), ("b", "x"), ("b", "y"), ("c", "y")] {
            b.add_edge(u, v, 1.0).unwrap();
        }
        b.add_attribute("a", "t", 1.0).unwrap();
        b.add_attribute("c", "t", 2.0).unwrap();
        let g = b.build().unwrap();
        let p = QueryParams::new(0.2, 0.4, 1e-8).unwrap();
        let mut boundaries = 0;
        let out = app_with(
            &g,
            &p,
            0,
            Threshold::PerFanout(1e-9),
            &mut super::super::ObserveWith(|s: &PushState| {
                boundaries += 1;
                assert!(s.is_flushed());
                assert!(s.total_reserve() + s.total_u_residue() <= 1.0 + 1e-12);
            }),
        )
        .unwrap();
        assert_eq!(boundaries, out.stats.rounds + 1);
        assert_eq!(out.stats.operations, out.final_state.n_p);
        assert!(out.final_state.frontier.is_empty());
    }

    #[test]
    fn rejects_nonpositive_threshold() {
        let mut b = GraphBuilder::new();
        b.add_u("only");
        let g = b.build().unwrap();
        let p = QueryParams::default();
        assert!(app(&g, &p, 0, 0.0).is_err());
        assert!(app_with(&g, &p, 0, Threshold::Flat(-1.0), &mut crate::push::NoObserver).is_err());
    }
}
