use crate::error::{Error, Result};
use crate::score::ScoreVector;

use super::ClusterGroundTruth;

/// F1 of the top-k nodes against the query's cluster, with `k` equal to the
/// cluster size. The query itself may appear in its own top-k. Returns
/// `None` for an unlabelled query.
pub fn f1_at_k(scores: &ScoreVector, truth: &ClusterGroundTruth, query: usize) -> Option<f64> {
    let cluster = truth.label(query)?;
    let size = truth.cluster_size(cluster);
    let k = size.min(scores.len());
    if k == 0 {
        return Some(0.0);
    }
    let hits = scores
        .top_k(k)
        .into_iter()
        .filter(|&u| truth.label(u) == Some(cluster))
        .count() as f64;
    let precision = hits / k as f64;
    let recall = hits / size as f64;
    if hits == 0.0 {
        return Some(0.0);
    }
    Some(2.0 * precision * recall / (precision + recall))
}

/// `|U_k ∩ Û_k| / k` where `U_k` and `Û_k` are the top-k of `exact` and
/// `approx` under the crate tie rule.
pub fn topk_precision(approx: &ScoreVector, exact: &ScoreVector, k: usize) -> Result<f64> {
    if approx.len() != exact.len() {
        return Err(Error::param(format!(
            "score vectors differ in length ({} vs {})",
            approx.len(),
            exact.len()
        )));
    }
    if k == 0 || k > exact.len() {
        return Err(Error::param(format!("k must lie in 1..={}, got {k}", exact.len())));
    }
    let mut want = vec![false; exact.len()];
    for u in exact.top_k(k) {
        want[u] = true;
    }
    let hits = approx.top_k(k).into_iter().filter(|&u| want[u]).count();
    Ok(hits as f64 / k as f64)
}
