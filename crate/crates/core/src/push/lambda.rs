use crate::error::{Error, Result};
use crate::graph::{AttributedBipartiteGraph, LambdaKey};
use crate::params::QueryParams;
use crate::transition::Propagator;

/// Upper bound on the largest column sum of the AHPP matrix,
/// `max_i pi_T(u_i) + |U| (1 - alpha)^T`, where
/// `pi_T = 1 · Σ_{l<T} alpha (1 - alpha)^l P^l` is power iteration from the
/// all-ones vector. Only `alpha` and `beta` of `params` are used.
pub fn estimate_lambda(g: &AttributedBipartiteGraph, params: &QueryParams, iterations: usize) -> Result<f64> {
    params.validate()?;
    if iterations == 0 {
        return Err(Error::param("lambda estimation needs at least one iteration"));
    }
    let alpha = params.alpha;
    let n = g.u_count();
    let mut prop = Propagator::new(g, params.transition());
    // term = (1 - alpha)^l · 1 · P^l
    let mut term = vec![1.0; n];
    let mut next = vec![0.0; n];
    let mut acc: Vec<f64> = term.iter().map(|x| alpha * x).collect();
    for _ in 1..iterations {
        prop.step_dense(&term, &mut next);
        for (t, x) in term.iter_mut().zip(&next) {
            *t = (1.0 - alpha) * x;
        }
        for (a, t) in acc.iter_mut().zip(&term) {
            *a += alpha * t;
        }
    }
    let max = acc.iter().copied().fold(0.0, f64::max);
    Ok(max + n as f64 * (1.0 - alpha).powi(iterations as i32))
}

/// [`estimate_lambda`] memoized on the graph per `(alpha, beta, T)`.
pub fn cached_lambda(g: &AttributedBipartiteGraph, params: &QueryParams, iterations: usize) -> Result<f64> {
    let key = LambdaKey {
        alpha_bits: params.alpha.to_bits(),
        beta_bits: params.beta.to_bits(),
        iterations,
    };
    if let Some(&l) = g.caches.lambda.read().expect("lambda cache poisoned").get(&key) {
        return Ok(l);
    }
    let l = estimate_lambda(g, params, iterations)?;
    g.caches
        .lambda
        .write()
        .expect("lambda cache poisoned")
        .insert(key, l);
    Ok(l)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::GraphBuilder;

    fn small() -> AttributedBipartiteGraph {
        let mut b = GraphBuilder::new();
        for (u, v) in [("a", "x"), ("b", "x"), ("c", "y"), ("a", "y")] {
            b.add_edge(u, v, 1.0).unwrap();
        }
        b.add_attribute("b", "t", 1.0).unwrap();
        b.build().unwrap()
    }

    #[test]
    fn single_iteration_is_closed_form() {
        let g = small();
        let p = QueryParams::new(0.15, 0.35, 1e-6).unwrap();
        let l = estimate_lambda(&g, &p, 1).unwrap();
        assert!((l - (0.15 + 3.0 * 0.85)).abs() < 1e-12);
    }

    #[test]
    fn single_node_column_sum() {
        let mut b = GraphBuilder::new();
        b.add_edge("u", "v", 1.0).unwrap();
        let g = b.build().unwrap();
        let p = QueryParams::new(0.3, 0.0, 1e-6).unwrap();
        for t in [1, 2, 7, 40] {
            assert!(estimate_lambda(&g, &p, t).unwrap() >= 1.0 - 1e-12);
        }
    }

    #[test]
    fn cache_returns_same_value() {
        let g = small();
        let p = QueryParams::default();
        let a = cached_lambda(&g, &p, 30).unwrap();
        let b = cached_lambda(&g, &p, 30).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, estimate_lambda(&g, &p, 30).unwrap());
        assert!(estimate_lambda(&g, &p, 0).is_err());
    }
}
