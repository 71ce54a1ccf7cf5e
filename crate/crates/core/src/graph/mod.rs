//! Immutable attributed bipartite graph.
//!
//! Nodes live in three dense index spaces: the query side `U`, the opposite
//! side `V`, and the attribute set. Every relation is stored twice in CSR
//! form (forward and transposed) so that both directions of a push can
//! iterate neighbors without a search.

mod io;
mod synthetic;

use std::collections::HashMap;
use std::fmt;
use std::sync::{OnceLock, RwLock};

use crate::error::{Error, Result};

pub(crate) use io::parse_pairs;
pub use io::{load_graph, save_graph, write_attribute_file, write_edge_file};
pub use synthetic::{generate_clustered, generate_synthetic, PlantedClusters, SyntheticSpec};

/// Which of the three node spaces an index refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Partition {
    U,
    V,
    Attr,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeRef {
    pub partition: Partition,
    pub index: usize,
}

impl NodeRef {
    pub fn u(index: usize) -> Self {
        NodeRef {
            partition: Partition::U,
            index,
        }
    }

    pub fn v(index: usize) -> Self {
        NodeRef {
            partition: Partition::V,
            index,
        }
    }

    pub fn attr(index: usize) -> Self {
        NodeRef {
            partition: Partition::Attr,
            index,
        }
    }
}

/// One adjacency row: parallel slices of target indices and positive weights.
#[derive(Debug, Clone, Copy)]
pub struct Row<'a> {
    pub targets: &'a [usize],
    pub weights: &'a [f64],
}

impl<'a> Row<'a> {
    pub fn len(&self) -> usize {
        self.targets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.targets.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, f64)> + 'a {
        self.targets.iter().copied().zip(self.weights.iter().copied())
    }
}

#[derive(Debug, Clone, PartialEq)]
struct Csr {
    offsets: Vec<usize>,
    targets: Vec<usize>,
    weights: Vec<f64>,
}

impl Csr {
    /// `entries` must be sorted by (row, target) and free of duplicates.
    fn from_sorted(rows: usize, entries: &[(usize, usize, f64)]) -> Self {
        let mut offsets = vec![0usize; rows + 1];
        for &(r, _, _) in entries {
            offsets[r + 1] += 1;
        }
        for i in 0..rows {
            offsets[i + 1] += offsets[i];
        }
        Csr {
            offsets,
            targets: entries.iter().map(|e| e.1).collect(),
            weights: entries.iter().map(|e| e.2).collect(),
        }
    }

    fn transpose(&self, cols: usize) -> Self {
        let mut entries: Vec<(usize, usize, f64)> = Vec::with_capacity(self.targets.len());
        for r in 0..self.rows() {
            let row = self.row(r);
            entries.extend(row.iter().map(|(c, w)| (c, r, w)));
        }
        entries.sort_unstable_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));
        Csr::from_sorted(cols, &entries)
    }

    fn rows(&self) -> usize {
        self.offsets.len() - 1
    }

    fn row(&self, r: usize) -> Row<'_> {
        let (lo, hi) = (self.offsets[r], self.offsets[r + 1]);
        Row {
            targets: &self.targets[lo..hi],
            weights: &self.weights[lo..hi],
        }
    }

    fn nnz(&self) -> usize {
        self.targets.len()
    }

    fn row_sums(&self) -> Vec<f64> {
        (0..self.rows())
            .map(|r| self.row(r).weights.iter().sum())
            .collect()
    }
}

/// Bidirectional map between external string ids and dense indices.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct IdTable {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

impl IdTable {
    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, index: usize) -> &str {
        &self.names[index]
    }

    pub fn get(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    fn intern(&mut self, name: &str) -> usize {
        if let Some(&i) = self.index.get(name) {
            return i;
        }
        let i = self.names.len();
        self.names.push(name.to_owned());
        self.index.insert(name.to_owned(), i);
        i
    }
}

/// Lazily built per-graph data shared by all queries.
#[derive(Default)]
pub(crate) struct GraphCaches {
    pub(crate) walk_tables: OnceLock<crate::baselines::WalkTables>,
    pub(crate) lambda: RwLock<HashMap<LambdaKey, f64>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub(crate) struct LambdaKey {
    pub(crate) alpha_bits: u64,
    pub(crate) beta_bits: u64,
    pub(crate) iterations: usize,
}

impl Clone for GraphCaches {
    fn clone(&self) -> Self {
        GraphCaches::default()
    }
}

// Caches are derived data and never part of graph identity.
impl PartialEq for GraphCaches {
    fn eq(&self, _: &Self) -> bool {
        true
    }
}

impl fmt::Debug for GraphCaches {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GraphCaches")
            .field("walk_tables", &self.walk_tables.get().is_some())
            .finish_non_exhaustive()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AttributedBipartiteGraph {
    u_ids: IdTable,
    v_ids: IdTable,
    attr_ids: IdTable,
    uv: Csr,
    vu: Csr,
    ua: Csr,
    au: Csr,
    u_degree: Vec<f64>,
    v_degree: Vec<f64>,
    u_attr_weight_sum: Vec<f64>,
    attr_weight_sum: Vec<f64>,
    pub(crate) caches: GraphCaches,
}

impl AttributedBipartiteGraph {
    pub fn u_count(&self) -> usize {
        self.u_ids.len()
    }

    pub fn v_count(&self) -> usize {
        self.v_ids.len()
    }

    pub fn attr_count(&self) -> usize {
        self.attr_ids.len()
    }

    /// Number of distinct U–V edges, `|E|`.
    pub fn edge_count(&self) -> usize {
        self.uv.nnz()
    }

    /// Number of distinct node–attribute associations, `|E_A|`.
    pub fn attr_edge_count(&self) -> usize {
        self.ua.nnz()
    }

    pub fn u_neighbors(&self, u: usize) -> Row<'_> {
        self.uv.row(u)
    }

    pub fn v_neighbors(&self, v: usize) -> Row<'_> {
        self.vu.row(v)
    }

    /// Attributes held by `u`, i.e. `A(u)` with weights `w(u, a)`.
    pub fn u_attributes(&self, u: usize) -> Row<'_> {
        self.ua.row(u)
    }

    /// Holders of attribute `a`, i.e. `A^-1(a)` with weights `w(u, a)`.
    pub fn attr_holders(&self, a: usize) -> Row<'_> {
        self.au.row(a)
    }

    pub fn u_degree(&self, u: usize) -> f64 {
        self.u_degree[u]
    }

    pub fn v_degree(&self, v: usize) -> f64 {
        self.v_degree[v]
    }

    pub fn u_attr_weight_sum(&self, u: usize) -> f64 {
        self.u_attr_weight_sum[u]
    }

    pub fn attr_weight_sum(&self, a: usize) -> f64 {
        self.attr_weight_sum[a]
    }

    /// `|N(u)| + |A(u)|`, the fan-out that scales the forward-push threshold.
    pub fn u_fanout(&self, u: usize) -> usize {
        self.uv.row(u).len() + self.ua.row(u).len()
    }

    pub fn u_ids(&self) -> &IdTable {
        &self.u_ids
    }

    pub fn v_ids(&self) -> &IdTable {
        &self.v_ids
    }

    pub fn attr_ids(&self) -> &IdTable {
        &self.attr_ids
    }

    pub fn u_index(&self, id: &str) -> Result<usize> {
        self.u_ids
            .get(id)
            .ok_or_else(|| Error::UnknownNode(id.to_owned()))
    }

    pub fn contains(&self, node: NodeRef) -> bool {
        let count = match node.partition {
            Partition::U => self.u_count(),
            Partition::V => self.v_count(),
            Partition::Attr => self.attr_count(),
        };
        node.index < count
    }

    pub(crate) fn check_source(&self, source: usize) -> Result<()> {
        if source < self.u_count() {
            Ok(())
        } else {
            Err(Error::param(format!(
                "source index {source} out of range for |U| = {}",
                self.u_count()
            )))
        }
    }

    /// All U–V edges as `(u, v, w)` in forward order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        (0..self.u_count()).flat_map(move |u| self.uv.row(u).iter().map(move |(v, w)| (u, v, w)))
    }

    /// All node–attribute associations as `(u, a, w)` in forward order.
    pub fn attribute_edges(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        (0..self.u_count()).flat_map(move |u| self.ua.row(u).iter().map(move |(a, w)| (u, a, w)))
    }

    /// Re-verifies the structural invariants: positive finite weights,
    /// transposed views mirroring forward views, and cached sums matching a
    /// recomputation.
    pub fn check_invariants(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::Structural(msg));
        for csr in [&self.uv, &self.vu, &self.ua, &self.au] {
            if let Some(w) = csr.weights.iter().find(|w| !(w.is_finite() && **w > 0.0)) {
                return fail(format!("non-positive or non-finite weight {w}"));
            }
        }
        if self.uv.transpose(self.v_count()) != self.vu {
            return fail("U->V and V->U views disagree".into());
        }
        if self.ua.transpose(self.attr_count()) != self.au {
            return fail("U->A and A->U views disagree".into());
        }
        let checks: [(&str, &[f64], Vec<f64>); 4] = [
            ("d(u)", &self.u_degree, self.uv.row_sums()),
            ("d(v)", &self.v_degree, self.vu.row_sums()),
            ("sum w(u,.)", &self.u_attr_weight_sum, self.ua.row_sums()),
            ("sum w(.,a)", &self.attr_weight_sum, self.au.row_sums()),
        ];
        for (name, cached, fresh) in checks {
            for (i, (c, f)) in cached.iter().zip(&fresh).enumerate() {
                if (c - f).abs() > 1e-12 * f.abs().max(1.0) {
                    return fail(format!("{name}[{i}] cached {c} != recomputed {f}"));
                }
            }
        }
        Ok(())
    }
}

/// Accumulates edges by external id and produces an immutable graph.
///
/// Repeated `(u, v)` or `(u, a)` pairs have their weights summed.
#[derive(Debug, Default, Clone)]
pub struct GraphBuilder {
    u_ids: IdTable,
    v_ids: IdTable,
    attr_ids: IdTable,
    edges: HashMap<(usize, usize), f64>,
    attr_edges: HashMap<(usize, usize), f64>,
}

fn check_weight(w: f64) -> Result<()> {
    if w.is_finite() && w > 0.0 {
        Ok(())
    } else {
        Err(Error::param(format!("weight must be positive and finite, got {w}")))
    }
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Pre-registers `u0..`, `v0..`, `a0..` so that index `i` maps to id `{prefix}{i}`.
    pub fn with_numbered_nodes(u_count: usize, v_count: usize, attr_count: usize) -> Self {
        let mut b = Self::new();
        for i in 0..u_count {
            b.u_ids.intern(&format!("u{i}"));
        }
        for i in 0..v_count {
            b.v_ids.intern(&format!("v{i}"));
        }
        for i in 0..attr_count {
            b.attr_ids.intern(&format!("a{i}"));
        }
        b
    }

    pub fn add_u(&mut self, id: &str) -> usize {
        self.u_ids.intern(id)
    }

    pub fn add_v(&mut self, id: &str) -> usize {
        self.v_ids.intern(id)
    }

    pub fn add_attr(&mut self, id: &str) -> usize {
        self.attr_ids.intern(id)
    }

    pub fn add_edge(&mut self, u: &str, v: &str, weight: f64) -> Result<&mut Self> {
        check_weight(weight)?;
        let (u, v) = (self.u_ids.intern(u), self.v_ids.intern(v));
        *self.edges.entry((u, v)).or_insert(0.0) += weight;
        Ok(self)
    }

    pub fn add_attribute(&mut self, u: &str, attr: &str, weight: f64) -> Result<&mut Self> {
        check_weight(weight)?;
        let (u, a) = (self.u_ids.intern(u), self.attr_ids.intern(attr));
        *self.attr_edges.entry((u, a)).or_insert(0.0) += weight;
        Ok(self)
    }

    /// Index-based variant of [`add_edge`](Self::add_edge); indices must already be registered.
    pub fn add_edge_indexed(&mut self, u: usize, v: usize, weight: f64) -> Result<&mut Self> {
        check_weight(weight)?;
        if u >= self.u_ids.len() || v >= self.v_ids.len() {
            return Err(Error::param(format!("edge ({u}, {v}) references an unregistered node")));
        }
        *self.edges.entry((u, v)).or_insert(0.0) += weight;
        Ok(self)
    }

    pub fn add_attribute_indexed(&mut self, u: usize, a: usize, weight: f64) -> Result<&mut Self> {
        check_weight(weight)?;
        if u >= self.u_ids.len() || a >= self.attr_ids.len() {
            return Err(Error::param(format!(
                "attribute edge ({u}, {a}) references an unregistered node"
            )));
        }
        *self.attr_edges.entry((u, a)).or_insert(0.0) += weight;
        Ok(self)
    }

    pub fn build(self) -> Result<AttributedBipartiteGraph> {
        if self.u_ids.is_empty() {
            return Err(Error::Structural("partition U is empty".into()));
        }
        let (n_u, n_v, n_a) = (self.u_ids.len(), self.v_ids.len(), self.attr_ids.len());

        let mut edges: Vec<(usize, usize, f64)> =
            self.edges.into_iter().map(|((u, v), w)| (u, v, w)).collect();
        edges.sort_unstable_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));
        let mut attr_edges: Vec<(usize, usize, f64)> =
            self.attr_edges.into_iter().map(|((u, a), w)| (u, a, w)).collect();
        attr_edges.sort_unstable_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));

        let uv = Csr::from_sorted(n_u, &edges);
        let vu = uv.transpose(n_v);
        let ua = Csr::from_sorted(n_u, &attr_edges);
        let au = ua.transpose(n_a);

        Ok(AttributedBipartiteGraph {
            u_degree: uv.row_sums(),
            v_degree: vu.row_sums(),
            u_attr_weight_sum: ua.row_sums(),
            attr_weight_sum: au.row_sums(),
            u_ids: self.u_ids,
            v_ids: self.v_ids,
            attr_ids: self.attr_ids,
            uv,
            vu,
            ua,
            au,
            caches: GraphCaches::default(),
        })
    }
}
