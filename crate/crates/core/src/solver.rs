//! Uniform front end over the five solvers.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use crate::baselines::{self, McParams, WalkTables};
use crate::error::{Error, Result};
use crate::graph::AttributedBipartiteGraph;
use crate::params::QueryParams;
use crate::push::{self, AsrpParams, DEFAULT_LAMBDA_ITERATIONS};
use crate::score::ScoreVector;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algorithm {
    Mc,
    Pi,
    Fp,
    App,
    Asrp,
}

impl Algorithm {
    pub const ALL: [Algorithm; 5] = [
        Algorithm::Mc,
        Algorithm::Pi,
        Algorithm::Fp,
        Algorithm::App,
        Algorithm::Asrp,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Mc => "mc",
            Algorithm::Pi => "pi",
            Algorithm::Fp => "fp",
            Algorithm::App => "app",
            Algorithm::Asrp => "asrp",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::param(format!("unknown algorithm `{s}` (expected mc|pi|fp|app|asrp)")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig {
    pub algorithm: Algorithm,
    pub params: QueryParams,
    /// Power-iteration rounds; defaults to `ceil(log_{1/(1-alpha)}(1/epsilon))`.
    pub iterations: Option<usize>,
    /// Forward-push / APP threshold unit; defaults to `epsilon / (|E| + |A|)`.
    pub r_max: Option<f64>,
    /// ASRP column-sum bound; estimated when absent.
    pub lambda: Option<f64>,
    pub lambda_iterations: usize,
    pub mc: McParams,
    pub seed: u64,
}

impl SolverConfig {
    pub fn new(algorithm: Algorithm, params: QueryParams) -> Self {
        SolverConfig {
            algorithm,
            params,
            iterations: None,
            r_max: None,
            lambda: None,
            lambda_iterations: DEFAULT_LAMBDA_ITERATIONS,
            mc: McParams::default(),
            seed: 0,
        }
    }

    /// Checks every range without touching a graph.
    pub fn validate(&self) -> Result<()> {
        self.params.validate()?;
        self.mc.validate()?;
        if self.iterations == Some(0) {
            return Err(Error::param("T must be at least 1"));
        }
        if let Some(r) = self.r_max {
            if !(r > 0.0 && r.is_finite()) {
                return Err(Error::param(format!("r_max must be positive, got {r}")));
            }
        }
        if let Some(l) = self.lambda {
            AsrpParams::with_lambda(l)?;
        }
        if self.lambda_iterations == 0 {
            return Err(Error::param("lambda estimation needs at least one iteration"));
        }
        Ok(())
    }

    /// Runs per-graph preprocessing (alias tables, lambda) and returns a
    /// handle for repeated queries.
    pub fn prepare<'g>(&self, g: &'g AttributedBipartiteGraph) -> Result<PreparedSolver<'g>> {
        self.validate()?;
        let start = Instant::now();
        let mut asrp = None;
        match self.algorithm {
            Algorithm::Mc => {
                WalkTables::for_graph(g);
            }
            Algorithm::Asrp => {
                asrp = Some(match self.lambda {
                    Some(l) => AsrpParams::with_lambda(l)?,
                    None => AsrpParams::estimate(g, &self.params, self.lambda_iterations)?,
                });
            }
            _ => {}
        }
        Ok(PreparedSolver {
            g,
            config: self.clone(),
            asrp,
            r_max: self.r_max.unwrap_or_else(|| baselines::default_r_max(g, &self.params)),
            preprocessing: start.elapsed(),
        })
    }
}

#[derive(Debug, Clone)]
pub struct PreparedSolver<'g> {
    g: &'g AttributedBipartiteGraph,
    config: SolverConfig,
    asrp: Option<AsrpParams>,
    r_max: f64,
    preprocessing: Duration,
}

impl<'g> PreparedSolver<'g> {
    pub fn config(&self) -> &SolverConfig {
        &self.config
    }

    pub fn graph(&self) -> &'g AttributedBipartiteGraph {
        self.g
    }

    /// Wall-clock spent in [`SolverConfig::prepare`].
    pub fn preprocessing(&self) -> Duration {
        self.preprocessing
    }

    pub fn lambda(&self) -> Option<f64> {
        self.asrp.map(|a| a.lambda)
    }

    pub fn query(&self, source: usize) -> Result<ScoreVector> {
        let (g, c) = (self.g, &self.config);
        match c.algorithm {
            Algorithm::Mc => {
                let seed = c.seed ^ (source as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15);
                baselines::monte_carlo(g, &c.params, &c.mc, source, seed)
            }
            Algorithm::Pi => {
                let t = c.iterations.unwrap_or_else(|| baselines::pi_iterations_for(&c.params));
                baselines::power_iteration(g, &c.params, source, t)
            }
            Algorithm::Fp => {
                baselines::forward_push_with(g, &c.params, source, self.r_max, &mut push::NoObserver)
                    .map(|(s, _)| s)
            }
            Algorithm::App => push::app(g, &c.params, source, self.r_max),
            Algorithm::Asrp => {
                let ap = self.asrp.expect("asrp parameters are set by prepare");
                push::asrp(g, &c.params, source, &ap)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_names() {
        for a in Algorithm::ALL {
            assert_eq!(a.name().parse::<Algorithm>().unwrap(), a);
        }
        assert_eq!("ASRP".parse::<Algorithm>().unwrap(), Algorithm::Asrp);
        assert!("simrank".parse::<Algorithm>().is_err());
    }

    #[test]
    fn validation_catches_overrides() {
        let mut c = SolverConfig::new(Algorithm::Asrp, QueryParams::default());
        assert!(c.validate().is_ok());
        c.lambda = Some(0.5);
        assert!(c.validate().is_err());
        c.lambda = None;
        c.r_max = Some(-1.0);
        assert!(c.validate().is_err());
        c.r_max = None;
        c.iterations = Some(0);
        assert!(c.validate().is_err());
    }
}
