//! Shared fixtures and a dense brute-force oracle for integration tests.
//!
//! The oracle rebuilds the structure and attribute transition matrices from
//! raw edge lists and sums the restart series with dense matrix products.
//! It shares no code with the solvers beyond reading the edge lists.

#![allow(dead_code)]

use std::path::PathBuf;

use ahpp_core::graph::load_graph;
use ahpp_core::{AttributedBipartiteGraph, GraphBuilder, QueryParams};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Matrix = Vec<Vec<f64>>;

pub const ORACLE_TERMS: usize = 200;

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

/// Four users, four items, four attributes, unit weights.
pub fn example1() -> AttributedBipartiteGraph {
    load_graph(
        &fixture_path("example1_edges.tsv"),
        Some(&fixture_path("example1_attrs.tsv")),
    )
    .expect("example fixture loads")
}

/// Small random graph for seed `seed`: `|U| <= 50`, a mix of weights, some
/// nodes without items or without attributes, sometimes no attributes at all.
pub fn random_graph(seed: u64) -> AttributedBipartiteGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(0xA11CE ^ seed);
    let nu = rng.random_range(4..=50);
    let nv = rng.random_range(2..=30);
    let na = if seed % 5 == 3 { 0 } else { rng.random_range(1..=12) };
    let p_edge = rng.random_range(0.05..0.3);
    let p_attr = rng.random_range(0.05..0.4);
    let mut b = GraphBuilder::with_numbered_nodes(nu, nv, na);
    for u in 0..nu {
        for v in 0..nv {
            if rng.random_bool(p_edge) {
                let w = rng.random_range(0.5..3.0);
                b.add_edge_indexed(u, v, w).unwrap();
            }
        }
        for a in 0..na {
            if rng.random_bool(p_attr) {
                let w = if rng.random_bool(0.5) { 1.0 } else { rng.random_range(0.5..3.0) };
                b.add_attribute_indexed(u, a, w).unwrap();
            }
        }
    }
    b.build().unwrap()
}

/// Example 1 plus four random graphs of different shapes.
pub fn fixtures() -> Vec<(String, AttributedBipartiteGraph)> {
    let mut out = vec![("example1".to_string(), example1())];
    for seed in [100, 101, 102, 103] {
        out.push((format!("random{seed}"), random_graph(seed)));
    }
    out
}

/// Structure and attribute transition matrices built straight from the
/// edge lists.
pub fn dense_transitions(g: &AttributedBipartiteGraph) -> (Matrix, Matrix) {
    let (nu, nv, na) = (g.u_count(), g.v_count(), g.attr_count());
    let mut w_uv = vec![vec![0.0; nv]; nu];
    for (u, v, w) in g.edges() {
        w_uv[u][v] += w;
    }
    let mut w_ua = vec![vec![0.0; na]; nu];
    for (u, a, w) in g.attribute_edges() {
        w_ua[u][a] += w;
    }
    let du: Vec<f64> = w_uv.iter().map(|r| r.iter().sum()).collect();
    let dv: Vec<f64> = (0..nv).map(|v| (0..nu).map(|u| w_uv[u][v]).sum()).collect();
    let su: Vec<f64> = w_ua.iter().map(|r| r.iter().sum()).collect();
    let sa: Vec<f64> = (0..na).map(|a| (0..nu).map(|u| w_ua[u][a]).sum()).collect();

    let mut ps = vec![vec![0.0; nu]; nu];
    let mut pa = vec![vec![0.0; nu]; nu];
    for i in 0..nu {
        for j in 0..nu {
            let mut s = 0.0;
            for v in 0..nv {
                if w_uv[i][v] > 0.0 && w_uv[j][v] > 0.0 {
                    s += w_uv[i][v] / du[i] * w_uv[j][v] / dv[v];
                }
            }
            ps[i][j] = s;
            let mut t = 0.0;
            for a in 0..na {
                if w_ua[i][a] > 0.0 && w_ua[j][a] > 0.0 {
                    t += w_ua[i][a] / su[i] * w_ua[j][a] / sa[a];
                }
            }
            pa[i][j] = t;
        }
    }
    (ps, pa)
}

pub fn blended(g: &AttributedBipartiteGraph, beta: f64) -> Matrix {
    let (ps, pa) = dense_transitions(g);
    ps.iter()
        .zip(&pa)
        .map(|(rs, ra)| rs.iter().zip(ra).map(|(s, a)| (1.0 - beta) * s + beta * a).collect())
        .collect()
}

fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let m = b.first().map_or(0, Vec::len);
    let mut c = vec![vec![0.0; m]; n];
    for i in 0..n {
        for k in 0..b.len() {
            let x = a[i][k];
            if x != 0.0 {
                for j in 0..m {
                    c[i][j] += x * b[k][j];
                }
            }
        }
    }
    c
}

/// `Σ_{l < terms} alpha (1-alpha)^l P^l`; row `s` is the score vector of source `s`.
pub fn exact_pi_terms(g: &AttributedBipartiteGraph, alpha: f64, beta: f64, terms: usize) -> Matrix {
    let n = g.u_count();
    let p = blended(g, beta);
    let mut power: Matrix = (0..n).map(|i| (0..n).map(|j| f64::from(i == j)).collect()).collect();
    let mut out = vec![vec![0.0; n]; n];
    let mut coef = alpha;
    for _ in 0..terms {
        for i in 0..n {
            for j in 0..n {
                out[i][j] += coef * power[i][j];
            }
        }
        power = mat_mul(&power, &p);
        coef *= 1.0 - alpha;
    }
    out
}

pub fn exact_pi(g: &AttributedBipartiteGraph, params: &QueryParams) -> Matrix {
    exact_pi_terms(g, params.alpha, params.beta, ORACLE_TERMS + 1)
}

pub fn max_column_sum(m: &Matrix) -> f64 {
    let n = m.len();
    (0..n).map(|j| (0..n).map(|i| m[i][j]).sum::<f64>()).fold(0.0, f64::max)
}

pub fn params(alpha: f64, beta: f64, epsilon: f64) -> QueryParams {
    QueryParams::new(alpha, beta, epsilon).unwrap()
}
