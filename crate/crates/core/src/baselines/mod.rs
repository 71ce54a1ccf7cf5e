//! Prior-art solvers adapted to AHPP: Monte Carlo walks, power iteration
//! and forward push. Besides serving as baselines they cross-check the
//! push engine in tests.

mod alias;
mod forward_push;
mod monte_carlo;
mod power;

pub use alias::{AliasTable, RowAliases, WalkTables};
pub use forward_push::{default_r_max, forward_push, forward_push_with};
pub use monte_carlo::{monte_carlo, McParams};
pub use power::{ground_truth, ground_truth_iterations, power_iteration, pi_iterations_for};
