//! Closed-form predictions and exact finite-instance laws.
//!
//! Everything here is deterministic arithmetic: degree marginals, the
//! giant-component phase boundary and fixed-point equations, connectivity
//! asymptotics, and the exact probability formulas that the Monte Carlo
//! samplers are checked against.

mod connectivity;
mod exact;
mod giant;
mod negbin;
mod rising;

pub use connectivity::{
    connectivity_limit, connectivity_prediction, connectivity_threshold, isolated_mean,
    sg_disconnect_exponent, ConnectivityPrediction,
};
pub use exact::{
    edge_partition_logprob, exact_multigraph_logprob, measure_change_ratio, MeasureChange,
    PartitionEvent,
};
pub use giant::{
    giant_fraction, giant_threshold, solve_eta, supercritical_probs, supercriticality_margin,
    GiantPrediction, DEFAULT_FIXED_POINT_TOL, MAX_FIXED_POINT_ITERATIONS,
};
pub use negbin::{degree_model, NegBin};
pub use rising::{ln_gamma, log_binomial, log_factorial, log_rising_factorial};
