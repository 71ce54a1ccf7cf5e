//! Alternating Propagation Push and Adaptive Synchronous Residue Push.
//!
//! Both solvers keep residue on `U`, `V` and the attributes. A round pushes
//! every selected U-node out to its `V` neighbors and attributes, then
//! flushes all of that mass back to `U`. Reserves only ever grow and
//! underestimate the exact scores.

mod alternating;
mod asrp;
mod invariance;
mod lambda;
mod state;

pub use alternating::{app, app_with, PushOutcome, Threshold};
pub use asrp::{asrp, asrp_with, AsrpParams, DEFAULT_LAMBDA_ITERATIONS};
pub use invariance::iterative_invariance_check;
pub use lambda::{cached_lambda, estimate_lambda};
pub use state::{NoObserver, ObserveWith, PushObserver, PushState, PushStats};
