//! Shared inputs for the benchmarks.

use calibsim_core::experiment::run_models;
use calibsim_core::{ChainModel, ErrorRange};

/// `count` seeded (truth, belief) pairs with `n` evidence nodes.
pub fn model_pairs(n: usize, err: f64, count: u64) -> Vec<(ChainModel, ChainModel)> {
    let err = ErrorRange::new(err).expect("error range in [0, 2]");
    (0..count)
        .map(|seed| run_models(n, err, None, seed).expect("n within limits"))
        .collect()
}
