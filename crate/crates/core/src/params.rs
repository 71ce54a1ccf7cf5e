use crate::error::{Error, Result};

/// Knobs of a single-source query: restart probability `alpha`, attribute
/// jump probability `beta` and the absolute error target `epsilon`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QueryParams {
    pub alpha: f64,
    pub beta: f64,
    pub epsilon: f64,
}

impl Default for QueryParams {
    fn default() -> Self {
        QueryParams {
            alpha: 0.15,
            beta: 0.35,
            epsilon: 1e-6,
        }
    }
}

impl QueryParams {
    pub fn new(alpha: f64, beta: f64, epsilon: f64) -> Result<Self> {
        let p = QueryParams {
            alpha,
            beta,
            epsilon,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(Error::param(format!("alpha must lie in (0, 1), got {}", self.alpha)));
        }
        TransitionParams::new(self.beta)?;
        if !(self.epsilon > 0.0 && self.epsilon.is_finite()) {
            return Err(Error::param(format!("epsilon must be positive, got {}", self.epsilon)));
        }
        Ok(())
    }

    pub fn transition(&self) -> TransitionParams {
        TransitionParams { beta: self.beta }
    }

    /// `log_{1/(1-alpha)}(x)`.
    pub fn decay_log(&self, x: f64) -> f64 {
        x.ln() / (1.0 / (1.0 - self.alpha)).ln()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransitionParams {
    pub beta: f64,
}

impl TransitionParams {
    pub fn new(beta: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&beta) {
            return Err(Error::param(format!("beta must lie in [0, 1], got {beta}")));
        }
        Ok(TransitionParams { beta })
    }
}
