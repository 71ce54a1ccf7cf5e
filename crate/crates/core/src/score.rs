use std::cmp::Ordering;

/// Estimated AHPP values `π̂(source, ·)` over every U-node.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoreVector {
    pub source: usize,
    pub scores: Vec<f64>,
}

/// Descending score, then ascending index.
pub fn rank_order(scores: &[f64], a: usize, b: usize) -> Ordering {
    scores[b]
        .partial_cmp(&scores[a])
        .unwrap_or(Ordering::Equal)
        .then(a.cmp(&b))
}

impl ScoreVector {
    pub fn new(source: usize, scores: Vec<f64>) -> Self {
        ScoreVector { source, scores }
    }

    pub fn len(&self) -> usize {
        self.scores.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scores.is_empty()
    }

    pub fn get(&self, u: usize) -> f64 {
        self.scores[u]
    }

    pub fn total(&self) -> f64 {
        self.scores.iter().sum()
    }

    /// Indices of the `k` best nodes under the crate-wide tie rule
    /// (descending score, ascending index). `k` is clamped to `len()`.
    pub fn top_k(&self, k: usize) -> Vec<usize> {
        let k = k.min(self.len());
        let mut idx: Vec<usize> = (0..self.len()).collect();
        if k == 0 {
            return Vec::new();
        }
        if k < idx.len() {
            idx.select_nth_unstable_by(k - 1, |&a, &b| rank_order(&self.scores, a, b));
            idx.truncate(k);
        }
        idx.sort_unstable_by(|&a, &b| rank_order(&self.scores, a, b));
        idx
    }

    /// Same as [`top_k`](Self::top_k) but skipping `exclude`.
    pub fn top_k_excluding(&self, k: usize, exclude: usize) -> Vec<usize> {
        let mut out = self.top_k((k + 1).min(self.len()));
        out.retain(|&u| u != exclude);
        out.truncate(k);
        out
    }

    pub fn max_abs_diff(&self, other: &ScoreVector) -> f64 {
        self.scores
            .iter()
            .zip(&other.scores)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ties_break_by_index() {
        let s = ScoreVector::new(0, vec![0.1, 0.3, 0.3, 0.0, 0.3]);
        assert_eq!(s.top_k(3), vec![1, 2, 4]);
        assert_eq!(s.top_k(4), vec![1, 2, 4, 0]);
        assert_eq!(s.top_k(10), vec![1, 2, 4, 0, 3]);
        assert!(s.top_k(0).is_empty());
        assert_eq!(s.top_k_excluding(2, 2), vec![1, 4]);
    }
}
