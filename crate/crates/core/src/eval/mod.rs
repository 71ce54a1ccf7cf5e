//! Effectiveness and timing protocols: cluster-consistency F1, top-k
//! precision against a reference ranking, link prediction on held-out
//! edges, and runtime sweeps.

mod linkpred;
mod metrics;
mod sweep;

use std::collections::HashMap;
use std::io::Write;
use std::path::Path;
use std::time::Instant;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::AttributedBipartiteGraph;
use crate::solver::PreparedSolver;

pub use linkpred::{link_prediction, split_edges, LinkSplit};
pub use metrics::{f1_at_k, topk_precision};
pub use sweep::{benchmark_sweep, sample_queries, write_timing_csv, TimingRow};

/// Ground-truth community of each U-node, if labelled.
#[derive(Debug, Clone, PartialEq)]
pub struct ClusterGroundTruth {
    labels: Vec<Option<usize>>,
    sizes: Vec<usize>,
}

impl ClusterGroundTruth {
    /// `labels[u]` is the cluster of U-node `u`; cluster ids are dense.
    pub fn new(labels: Vec<Option<usize>>) -> Result<Self> {
        let clusters = labels.iter().flatten().map(|&c| c + 1).max().unwrap_or(0);
        let mut sizes = vec![0; clusters];
        for &c in labels.iter().flatten() {
            sizes[c] += 1;
        }
        if sizes.iter().filter(|&&s| s > 0).count() < 2 {
            return Err(Error::param("cluster ground truth needs at least two clusters"));
        }
        Ok(ClusterGroundTruth { labels, sizes })
    }

    pub fn from_labels(labels: &[usize]) -> Result<Self> {
        Self::new(labels.iter().copied().map(Some).collect())
    }

    /// Reads `u_id<TAB>cluster_id` lines. Every node must exist in `g`.
    pub fn load(path: &Path, g: &AttributedBipartiteGraph) -> Result<Self> {
        let mut labels = vec![None; g.u_count()];
        let mut ids: HashMap<String, usize> = HashMap::new();
        for (line, u, c, _) in crate::graph::parse_pairs(path)? {
            let ui = g.u_index(&u)?;
            let next = ids.len();
            let ci = *ids.entry(c).or_insert(next);
            if labels[ui].is_some_and(|prev| prev != ci) {
                return Err(Error::Parse {
                    path: path.to_owned(),
                    line,
                    message: format!("node `{u}` assigned to two clusters"),
                });
            }
            labels[ui] = Some(ci);
        }
        Self::new(labels)
    }

    pub fn label(&self, u: usize) -> Option<usize> {
        self.labels.get(u).copied().flatten()
    }

    pub fn cluster_size(&self, cluster: usize) -> usize {
        self.sizes[cluster]
    }

    pub fn labelled_nodes(&self) -> impl Iterator<Item = usize> + '_ {
        self.labels
            .iter()
            .enumerate()
            .filter_map(|(u, l)| l.map(|_| u))
    }
}

/// Per-query values of one metric plus its aggregate.
#[derive(Debug, Clone, PartialEq)]
pub struct EvalReport {
    pub metric: String,
    pub algorithm: String,
    pub alpha: f64,
    pub beta: f64,
    pub epsilon: f64,
    pub k: Option<usize>,
    pub queries: Vec<usize>,
    pub values: Vec<f64>,
    pub wall_ns: Vec<u128>,
    /// Mean of `values`, except for link prediction where it is the pooled
    /// precision over all deleted edges.
    pub mean: f64,
}

impl EvalReport {
    /// CSV with one row per query and a final `mean` row.
    pub fn write_csv<W: Write>(&self, g: &AttributedBipartiteGraph, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["metric", "algorithm", "alpha", "beta", "epsilon", "k", "query", "value", "wall_ns"])?;
        let k = self.k.map(|k| k.to_string()).unwrap_or_default();
        let head = [
            self.metric.clone(),
            self.algorithm.clone(),
            self.alpha.to_string(),
            self.beta.to_string(),
            self.epsilon.to_string(),
            k,
        ];
        for ((&q, v), ns) in self.queries.iter().zip(&self.values).zip(&self.wall_ns) {
            let mut rec = head.to_vec();
            rec.extend([g.u_ids().name(q).to_owned(), format!("{v:.6}"), ns.to_string()]);
            w.write_record(&rec)?;
        }
        let mut rec = head.to_vec();
        rec.extend(["mean".to_owned(), format!("{:.6}", self.mean), String::new()]);
        w.write_record(&rec)?;
        w.flush().map_err(|e| Error::io("<csv output>", e))?;
        Ok(())
    }

    fn from_solver(metric: &str, solver: &PreparedSolver<'_>, k: Option<usize>) -> Self {
        let c = solver.config();
        EvalReport {
            metric: metric.to_owned(),
            algorithm: c.algorithm.to_string(),
            alpha: c.params.alpha,
            beta: c.params.beta,
            epsilon: c.params.epsilon,
            k,
            queries: Vec::new(),
            values: Vec::new(),
            wall_ns: Vec::new(),
            mean: 0.0,
        }
    }

    fn finish_with_mean(mut self) -> Self {
        self.mean = if self.values.is_empty() {
            0.0
        } else {
            self.values.iter().sum::<f64>() / self.values.len() as f64
        };
        self
    }
}

/// Runs `f` on every query, on `workers` threads when more than one.
/// Results keep the order of `queries`.
pub(crate) fn run_queries<T, F>(queries: &[usize], workers: usize, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(usize) -> Result<T> + Sync + Send,
{
    if workers <= 1 {
        return queries.iter().map(|&q| f(q)).collect();
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::param(format!("cannot start {workers} workers: {e}")))?;
    pool.install(|| queries.par_iter().map(|&q| f(q)).collect())
}

/// F1@k for every labelled query; unlabelled queries are skipped.
pub fn evaluate_f1(
    solver: &PreparedSolver<'_>,
    truth: &ClusterGroundTruth,
    queries: &[usize],
    workers: usize,
) -> Result<EvalReport> {
    let rows = run_queries(queries, workers, |q| {
        let start = Instant::now();
        let scores = solver.query(q)?;
        let ns = start.elapsed().as_nanos();
        Ok(f1_at_k(&scores, truth, q).map(|f| (q, f, ns)))
    })?;
    let mut report = EvalReport::from_solver("f1", solver, None);
    for (q, f, ns) in rows.into_iter().flatten() {
        report.queries.push(q);
        report.values.push(f);
        report.wall_ns.push(ns);
    }
    Ok(report.finish_with_mean())
}

/// Top-k precision of `solver` against power-iteration reference scores.
pub fn evaluate_topk(
    solver: &PreparedSolver<'_>,
    queries: &[usize],
    k: usize,
    workers: usize,
) -> Result<EvalReport> {
    let g = solver.graph();
    let params = solver.config().params;
    let rows = run_queries(queries, workers, |q| {
        let start = Instant::now();
        let approx = solver.query(q)?;
        let ns = start.elapsed().as_nanos();
        let exact = crate::baselines::ground_truth(g, &params, q)?;
        Ok((q, topk_precision(&approx, &exact, k)?, ns))
    })?;
    let mut report = EvalReport::from_solver("topk_precision", solver, Some(k));
    for (q, p, ns) in rows {
        report.queries.push(q);
        report.values.push(p);
        report.wall_ns.push(ns);
    }
    Ok(report.finish_with_mean())
}

/// Link prediction on a random `fraction` of deleted edges. Per-query
/// values are the share of each endpoint's deleted edges recovered; `mean`
/// is the pooled precision.
pub fn evaluate_link_prediction(
    g: &AttributedBipartiteGraph,
    config: &crate::solver::SolverConfig,
    fraction: f64,
    k: usize,
    seed: u64,
    workers: usize,
) -> Result<EvalReport> {
    let split = split_edges(g, fraction, seed)?;
    let solver = config.prepare(&split.held_out)?;
    let mut by_u: std::collections::BTreeMap<usize, Vec<(usize, usize)>> = Default::default();
    for &(u, v) in &split.removed {
        by_u.entry(u).or_default().push((u, v));
    }
    let endpoints: Vec<usize> = by_u.keys().copied().collect();
    let rows = run_queries(&endpoints, workers, |u| {
        let start = Instant::now();
        let p = link_prediction(&split.held_out, &by_u[&u], |q| solver.query(q), k)?;
        Ok((u, p, start.elapsed().as_nanos()))
    })?;
    let mut report = EvalReport::from_solver("link_prediction", &solver, Some(k));
    let mut hits = 0.0;
    for (u, p, ns) in rows {
        hits += p * by_u[&u].len() as f64;
        report.queries.push(u);
        report.values.push(p);
        report.wall_ns.push(ns);
    }
    report.mean = if split.removed.is_empty() {
        0.0
    } else {
        hits / split.removed.len() as f64
    };
    Ok(report)
}
