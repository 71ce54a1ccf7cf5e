//! Matrix-free evaluation of the blended transition
//! `P = (1 - beta) * P_S + beta * P_A` over `U`.
//!
//! Nothing here materializes `P`. Rows are computed on demand by walking two
//! hops, and [`Propagator`] moves a mass vector one step by scattering from
//! `U` into `V` and the attributes, then gathering back.
//!
//! A U-node without `V` neighbors loses the `1 - beta` share of its mass, and
//! one without attributes loses the `beta` share. `P` is therefore
//! sub-stochastic on such nodes.

use std::collections::BTreeMap;

use crate::graph::{AttributedBipartiteGraph, Partition};
use crate::params::TransitionParams;

/// Masses this small are dropped.
pub const MASS_FLOOR: f64 = 1e-300;

/// Sparse nonnegative mass over one partition.
#[derive(Debug, Clone, PartialEq)]
pub struct MassVector {
    partition: Partition,
    entries: BTreeMap<usize, f64>,
}

impl MassVector {
    pub fn new(partition: Partition) -> Self {
        MassVector {
            partition,
            entries: BTreeMap::new(),
        }
    }

    pub fn unit(partition: Partition, index: usize) -> Self {
        let mut m = Self::new(partition);
        m.add(index, 1.0);
        m
    }

    /// Collects `(index, mass)` pairs, summing repeats.
    pub fn from_entries(partition: Partition, entries: impl IntoIterator<Item = (usize, f64)>) -> Self {
        let mut m = Self::new(partition);
        for (i, x) in entries {
            m.add(i, x);
        }
        m
    }

    pub fn from_dense(partition: Partition, dense: &[f64]) -> Self {
        Self::from_entries(partition, dense.iter().copied().enumerate())
    }

    pub fn partition(&self) -> Partition {
        self.partition
    }

    /// Adds `mass` at `index`. Panics on negative or NaN mass.
    pub fn add(&mut self, index: usize, mass: f64) {
        assert!(mass >= 0.0, "mass must be nonnegative, got {mass}");
        let e = self.entries.entry(index).or_insert(0.0);
        *e += mass;
        if *e < MASS_FLOOR {
            self.entries.remove(&index);
        }
    }

    pub fn get(&self, index: usize) -> f64 {
        self.entries.get(&index).copied().unwrap_or(0.0)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.entries.iter().map(|(&i, &x)| (i, x))
    }

    pub fn total(&self) -> f64 {
        self.entries.values().sum()
    }

    pub fn to_dense(&self, len: usize) -> Vec<f64> {
        let mut out = vec![0.0; len];
        for (i, x) in self.iter() {
            out[i] = x;
        }
        out
    }
}

/// Row `u` of the structure transition: through every shared `V` neighbor
/// `v`, `w(u,v)/d(u) * w(v,u')/d(v)`.
pub fn structure_row(g: &AttributedBipartiteGraph, u: usize) -> MassVector {
    let mut row = MassVector::new(Partition::U);
    let du = g.u_degree(u);
    for (v, w_uv) in g.u_neighbors(u).iter() {
        let dv = g.v_degree(v);
        for (uj, w_vu) in g.v_neighbors(v).iter() {
            row.add(uj, (w_uv / du) * (w_vu / dv));
        }
    }
    row
}

/// Row `u` of the attribute transition: through every shared attribute `a`,
/// `w(u,a)/Σ_a' w(u,a') * w(u',a)/Σ_u'' w(u'',a)`.
pub fn attribute_row(g: &AttributedBipartiteGraph, u: usize) -> MassVector {
    let mut row = MassVector::new(Partition::U);
    let su = g.u_attr_weight_sum(u);
    for (a, w_ua) in g.u_attributes(u).iter() {
        let sa = g.attr_weight_sum(a);
        for (uj, w_ja) in g.attr_holders(a).iter() {
            row.add(uj, (w_ua / su) * (w_ja / sa));
        }
    }
    row
}

/// One step `mass · P`. Convenience wrapper that allocates a fresh
/// [`Propagator`]; loops should keep one around instead.
pub fn propagate_step(g: &AttributedBipartiteGraph, params: TransitionParams, mass: &MassVector) -> MassVector {
    Propagator::new(g, params).step(mass)
}

/// Reusable scratch for repeated `mass · P` products over one graph.
#[derive(Debug)]
pub struct Propagator<'g> {
    g: &'g AttributedBipartiteGraph,
    beta: f64,
    v_mass: Vec<f64>,
    a_mass: Vec<f64>,
    u_out: Vec<f64>,
    v_touched: Vec<usize>,
    a_touched: Vec<usize>,
    u_touched: Vec<usize>,
}

impl<'g> Propagator<'g> {
    pub fn new(g: &'g AttributedBipartiteGraph, params: TransitionParams) -> Self {
        Propagator {
            g,
            beta: params.beta,
            v_mass: vec![0.0; g.v_count()],
            a_mass: vec![0.0; g.attr_count()],
            u_out: vec![0.0; g.u_count()],
            v_touched: Vec::new(),
            a_touched: Vec::new(),
            u_touched: Vec::new(),
        }
    }

    #[inline]
    fn scatter(&mut self, u: usize, m: f64) {
        let g = self.g;
        let du = g.u_degree(u);
        if du > 0.0 {
            let share = (1.0 - self.beta) * m / du;
            for (v, w) in g.u_neighbors(u).iter() {
                if self.v_mass[v] == 0.0 {
                    self.v_touched.push(v);
                }
                self.v_mass[v] += share * w;
            }
        }
        let su = g.u_attr_weight_sum(u);
        if su > 0.0 {
            let share = self.beta * m / su;
            for (a, w) in g.u_attributes(u).iter() {
                if self.a_mass[a] == 0.0 {
                    self.a_touched.push(a);
                }
                self.a_mass[a] += share * w;
            }
        }
    }

    /// Sparse step. The input must live on `U`.
    pub fn step(&mut self, mass: &MassVector) -> MassVector {
        assert_eq!(mass.partition(), Partition::U, "propagate_step expects mass on U");
        for (u, m) in mass.iter() {
            self.scatter(u, m);
        }
        let g = self.g;
        for &v in &self.v_touched {
            let r = std::mem::take(&mut self.v_mass[v]);
            let dv = g.v_degree(v);
            for (uj, w) in g.v_neighbors(v).iter() {
                if self.u_out[uj] == 0.0 {
                    self.u_touched.push(uj);
                }
                self.u_out[uj] += r * w / dv;
            }
        }
        for &a in &self.a_touched {
            let r = std::mem::take(&mut self.a_mass[a]);
            let sa = g.attr_weight_sum(a);
            for (uj, w) in g.attr_holders(a).iter() {
                if self.u_out[uj] == 0.0 {
                    self.u_touched.push(uj);
                }
                self.u_out[uj] += r * w / sa;
            }
        }
        self.v_touched.clear();
        self.a_touched.clear();
        let mut out = MassVector::new(Partition::U);
        for &u in &self.u_touched {
            let x = std::mem::take(&mut self.u_out[u]);
            out.add(u, x);
        }
        self.u_touched.clear();
        out
    }

    /// Dense step: `out = input · P`. Both slices have length `|U|`.
    pub fn step_dense(&mut self, input: &[f64], out: &mut [f64]) {
        let g = self.g;
        debug_assert_eq!(input.len(), g.u_count());
        debug_assert_eq!(out.len(), g.u_count());
        self.v_mass.iter_mut().for_each(|x| *x = 0.0);
        self.a_mass.iter_mut().for_each(|x| *x = 0.0);
        for (u, &m) in input.iter().enumerate() {
            if m != 0.0 {
                self.scatter(u, m);
            }
        }
        self.v_touched.clear();
        self.a_touched.clear();
        out.iter_mut().for_each(|x| *x = 0.0);
        for v in 0..g.v_count() {
            let r = self.v_mass[v];
            if r == 0.0 {
                continue;
            }
            let dv = g.v_degree(v);
            for (uj, w) in g.v_neighbors(v).iter() {
                out[uj] += r * w / dv;
            }
        }
        for a in 0..g.attr_count() {
            let r = self.a_mass[a];
            if r == 0.0 {
                continue;
            }
            let sa = g.attr_weight_sum(a);
            for (uj, w) in g.attr_holders(a).iter() {
                out[uj] += r * w / sa;
            }
        }
    }
}
