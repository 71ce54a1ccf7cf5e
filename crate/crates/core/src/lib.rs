//! Similarity search on attributed bipartite graphs.
//!
//! The score of `u_j` for a query `u_i` is the probability that a restart
//! walk from `u_i` stops at `u_j`. Each step restarts with probability
//! `alpha`. Otherwise it hops `U -> V -> U` with probability `1 - beta` or
//! `U -> attribute -> U` with probability `beta`. [`push`] answers
//! `epsilon`-approximate single-source queries with two local push
//! algorithms. [`baselines`] holds Monte Carlo, power iteration and forward
//! push for comparison. [`eval`] implements the effectiveness and timing
//! protocols.

pub mod baselines;
pub mod error;
pub mod eval;
pub mod graph;
pub mod params;
pub mod push;
pub mod score;
pub mod solver;
pub mod transition;

pub use error::{Error, Result};
pub use graph::{AttributedBipartiteGraph, GraphBuilder, NodeRef, Partition};
pub use params::{QueryParams, TransitionParams};
pub use score::ScoreVector;
pub use solver::{Algorithm, PreparedSolver, SolverConfig};
