use super::state::PushState;
use crate::error::{Error, Result};
use crate::graph::AttributedBipartiteGraph;

/// Largest violation over `i` of
/// `pi(s, u_i) = reserve(u_i) + Σ_j r(u_j) pi(u_j, u_i)`,
/// where `exact_pi[j][i]` is the exact score of `u_i` from source `u_j`.
///
/// Only meaningful at a round boundary; a state still holding `V` or
/// attribute residue is rejected.
pub fn iterative_invariance_check(
    g: &AttributedBipartiteGraph,
    state: &PushState,
    exact_pi: &[Vec<f64>],
) -> Result<f64> {
    let n = g.u_count();
    if !state.is_flushed() {
        return Err(Error::Precondition(
            "state captured mid-round: V or attribute residue is nonzero".into(),
        ));
    }
    if exact_pi.len() != n || exact_pi.iter().any(|row| row.len() != n) {
        return Err(Error::param(format!("exact score matrix must be {n}x{n}")));
    }
    if state.reserve.len() != n || state.residue_u.len() != n {
        return Err(Error::param("state does not belong to this graph"));
    }
    let s = state.source;
    let mut worst: f64 = 0.0;
    for i in 0..n {
        let carried: f64 = (0..n)
            .filter(|&j| state.residue_u[j] != 0.0)
            .map(|j| state.residue_u[j] * exact_pi[j][i])
            .sum();
        worst = worst.max((exact_pi[s][i] - state.reserve[i] - carried).abs());
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::GraphBuilder;

    #[test]
    fn rejects_mid_round_state() {
        let mut b = GraphBuilder::new();
        b.add_edge("a", "x", 1.0).unwrap();
        let g = b.build().unwrap();
        let mut st = PushState::new(&g, 0, 1e-3);
        let pi = vec![vec![1.0]];
        assert_eq!(iterative_invariance_check(&g, &st, &pi).unwrap(), 0.0);
        st.residue_v[0] = 0.5;
        assert!(matches!(
            iterative_invariance_check(&g, &st, &pi),
            Err(Error::Precondition(_))
        ));
        st.residue_v[0] = 0.0;
        assert!(iterative_invariance_check(&g, &st, &[vec![1.0, 2.0]]).is_err());
    }
}
