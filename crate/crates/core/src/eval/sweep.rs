use std::io::Write;
use std::time::Instant;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::AttributedBipartiteGraph;
use crate::solver::{Algorithm, SolverConfig};

use super::run_queries;

/// Timing summary for one `(solver, epsilon, alpha)` point.
#[derive(Debug, Clone, PartialEq)]
pub struct TimingRow {
    pub algorithm: Algorithm,
    pub epsilon: f64,
    pub alpha: f64,
    pub beta: f64,
    pub queries: usize,
    pub mean_ns: f64,
    pub median_ns: u128,
    pub p95_ns: u128,
    pub preprocessing_ns: u128,
}

/// `n` distinct U-nodes chosen uniformly. Asking for more than `|U|` returns
/// all of them.
pub fn sample_queries(g: &AttributedBipartiteGraph, n: usize, seed: u64) -> Vec<usize> {
    let total = g.u_count();
    if n > total {
        log::warn!("requested {n} queries but the graph has {total} U-nodes; using all of them");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut picked = sample(&mut rng, total, n.min(total)).into_vec();
    picked.sort_unstable();
    picked
}

/// Times every solver at every `(epsilon, alpha)` pair over `queries`.
///
/// `base` supplies beta and all overrides. One warm-up query runs before
/// each timed batch and is not recorded. Rows come out in the order
/// solver, epsilon, alpha as given.
pub fn benchmark_sweep(
    g: &AttributedBipartiteGraph,
    algorithms: &[Algorithm],
    epsilons: &[f64],
    alphas: &[f64],
    base: &SolverConfig,
    queries: &[usize],
    workers: usize,
) -> Result<Vec<TimingRow>> {
    if queries.is_empty() {
        return Err(Error::param("a sweep needs at least one query"));
    }
    let mut rows = Vec::new();
    for &algorithm in algorithms {
        for &epsilon in epsilons {
            for &alpha in alphas {
                let mut cfg = base.clone();
                cfg.algorithm = algorithm;
                cfg.params.epsilon = epsilon;
                cfg.params.alpha = alpha;
                let solver = cfg.prepare(g)?;
                solver.query(queries[0])?;
                let mut times = run_queries(queries, workers, |q| {
                    let start = Instant::now();
                    solver.query(q)?;
                    Ok(start.elapsed().as_nanos())
                })?;
                times.sort_unstable();
                rows.push(TimingRow {
                    algorithm,
                    epsilon,
                    alpha,
                    beta: cfg.params.beta,
                    queries: times.len(),
                    mean_ns: times.iter().map(|&t| t as f64).sum::<f64>() / times.len() as f64,
                    median_ns: percentile(&times, 0.5),
                    p95_ns: percentile(&times, 0.95),
                    preprocessing_ns: solver.preprocessing().as_nanos(),
                });
            }
        }
    }
    Ok(rows)
}

/// Nearest-rank percentile of sorted data.
fn percentile(sorted: &[u128], q: f64) -> u128 {
    let rank = (q * sorted.len() as f64).ceil() as usize;
    sorted[rank.clamp(1, sorted.len()) - 1]
}

pub fn write_timing_csv<W: Write>(rows: &[TimingRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "solver",
        "epsilon",
        "alpha",
        "beta",
        "queries",
        "mean_ns",
        "median_ns",
        "p95_ns",
        "preprocessing_ns",
    ])?;
    for r in rows {
        w.write_record([
            r.algorithm.name().to_owned(),
            r.epsilon.to_string(),
            r.alpha.to_string(),
            r.beta.to_string(),
            r.queries.to_string(),
            format!("{:.0}", r.mean_ns),
            r.median_ns.to_string(),
            r.p95_ns.to_string(),
            r.preprocessing_ns.to_string(),
        ])?;
    }
    w.flush().map_err(|e| Error::io("<csv output>", e))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::QueryParams;

    #[test]
    fn percentiles() {
        let d: Vec<u128> = (1..=20).collect();
        assert_eq!(percentile(&d, 0.5), 10);
        assert_eq!(percentile(&d, 0.95), 19);
        assert_eq!(percentile(&[7], 0.95), 7);
    }

    #[test]
    fn cartesian_rows_in_order() {
        let g = crate::graph::generate_synthetic(&crate::graph::SyntheticSpec {
            u_count: 30,
            v_count: 20,
            attr_count: 5,
            edge_count: 100,
            attr_edge_count: 30,
            seed: 1,
        })
        .unwrap();
        let base = SolverConfig::new(Algorithm::Fp, QueryParams::default());
        let algos = [Algorithm::Fp, Algorithm::App, Algorithm::Asrp];
        let q = sample_queries(&g, 4, 2);
        let rows = benchmark_sweep(&g, &algos, &[1e-2, 1e-4, 1e-6], &[0.15], &base, &q, 2).unwrap();
        assert_eq!(rows.len(), 9);
        assert_eq!(rows[3].algorithm, Algorithm::App);
        assert_eq!(rows[4].epsilon, 1e-4);
        let mut buf = Vec::new();
        write_timing_csv(&rows, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap().lines().count(), 10);
        assert_eq!(sample_queries(&g, 100, 0).len(), 30);
        assert!(benchmark_sweep(&g, &algos, &[1e-2], &[0.15], &base, &[], 1).is_err());
    }
}
