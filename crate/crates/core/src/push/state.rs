use crate::graph::AttributedBipartiteGraph;

/// Working state of a push-style query: reserves on `U`, residues on
/// `U ∪ V ∪ A`, and the operation counter.
///
/// The `V` and attribute residue arrays are empty for solvers that push
/// straight from `U` to `U`.
#[derive(Debug, Clone)]
pub struct PushState {
    pub source: usize,
    pub reserve: Vec<f64>,
    pub residue_u: Vec<f64>,
    pub residue_v: Vec<f64>,
    pub residue_a: Vec<f64>,
    /// U-nodes scheduled for the next round, in FIFO order.
    pub frontier: Vec<usize>,
    /// Cumulative neighbor accesses.
    pub n_p: usize,
    /// Flat selection threshold, when the solver uses one.
    pub epsilon_f: f64,
    pub(crate) queued: Vec<bool>,
    pub(crate) v_touched: Vec<usize>,
    pub(crate) a_touched: Vec<usize>,
    /// Every U-node that ever held residue; entries may since have drained.
    pub(crate) u_support: Vec<usize>,
    pub(crate) in_support: Vec<bool>,
}

impl PushState {
    /// Unit residue on `source`, everything else zero.
    pub fn new(g: &AttributedBipartiteGraph, source: usize, epsilon_f: f64) -> Self {
        Self::with_sides(g, source, epsilon_f, true)
    }

    pub(crate) fn with_sides(
        g: &AttributedBipartiteGraph,
        source: usize,
        epsilon_f: f64,
        bipartite: bool,
    ) -> Self {
        let n = g.u_count();
        let (nv, na) = if bipartite {
            (g.v_count(), g.attr_count())
        } else {
            (0, 0)
        };
        let mut s = PushState {
            source,
            reserve: vec![0.0; n],
            residue_u: vec![0.0; n],
            residue_v: vec![0.0; nv],
            residue_a: vec![0.0; na],
            frontier: Vec::new(),
            n_p: 0,
            epsilon_f,
            queued: vec![false; n],
            v_touched: Vec::new(),
            a_touched: Vec::new(),
            u_support: Vec::new(),
            in_support: vec![false; n],
        };
        s.residue_u[source] = 1.0;
        s.note_support(source);
        s
    }

    #[inline]
    pub(crate) fn note_support(&mut self, u: usize) {
        if !self.in_support[u] {
            self.in_support[u] = true;
            self.u_support.push(u);
        }
    }

    #[inline]
    pub(crate) fn enqueue(&mut self, u: usize) {
        if !self.queued[u] {
            self.queued[u] = true;
            self.frontier.push(u);
        }
    }

    /// Empties the frontier, clearing queue flags.
    pub(crate) fn take_frontier(&mut self) -> Vec<usize> {
        let f = std::mem::take(&mut self.frontier);
        for &u in &f {
            self.queued[u] = false;
        }
        f
    }

    /// True when no mass is parked on `V` or the attributes.
    pub fn is_flushed(&self) -> bool {
        self.residue_v.iter().all(|&r| r == 0.0) && self.residue_a.iter().all(|&r| r == 0.0)
    }

    pub fn total_reserve(&self) -> f64 {
        self.reserve.iter().sum()
    }

    pub fn total_u_residue(&self) -> f64 {
        self.residue_u.iter().sum()
    }

    pub fn max_u_residue(&self) -> f64 {
        self.residue_u.iter().copied().fold(0.0, f64::max)
    }
}

/// Counters reported by the push solvers.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct PushStats {
    /// Individual U-node pushes.
    pub u_pushes: usize,
    /// Neighbor accesses; equals the final `n_p` for the alternating solvers.
    pub operations: usize,
    /// Full rounds executed, both phases included.
    pub rounds: usize,
    /// Whether the adaptive solver switched to synchronous rounds.
    pub switched: bool,
    /// Largest U-residue at the moment of the switch.
    pub residue_at_switch: f64,
    /// Synchronous rounds executed after the switch.
    pub sync_rounds: usize,
}

/// Receives the push state at every round boundary, where all `V` and
/// attribute residue has been pushed back to `U`. Called once for the
/// initial state and once after every round.
pub trait PushObserver {
    fn on_boundary(&mut self, state: &PushState);
}

/// Observer that does nothing.
#[derive(Debug, Clone, Copy, Default)]
pub struct NoObserver;

impl PushObserver for NoObserver {
    #[inline]
    fn on_boundary(&mut self, _: &PushState) {}
}

/// Adapts a closure into an observer.
pub struct ObserveWith<F>(pub F);

impl<F: FnMut(&PushState)> PushObserver for ObserveWith<F> {
    fn on_boundary(&mut self, state: &PushState) {
        (self.0)(state)
    }
}
