//! Seeded random graphs for randomized test suites.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::bigraph::BipartiteGraph;

/// Environment variable overriding the seed of randomized test utilities.
pub const SEED_ENV: &str = "SATKIT_SEED";

/// `SATKIT_SEED` when set and parseable, else `default`.
pub fn seed_from_env(default: u64) -> u64 {
    std::env::var(SEED_ENV)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(default)
}

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// Each of the `n_left * n_right` pairs is an edge with probability `density`.
pub fn random_graph<R: Rng>(rng: &mut R, n_left: usize, n_right: usize, density: f64) -> BipartiteGraph {
    let mut edges = Vec::new();
    for u in 0..n_left {
        for v in 0..n_right {
            if rng.gen_bool(density) {
                edges.push((u, v));
            }
        }
    }
    BipartiteGraph::build(n_left, n_right, &edges).expect("indices in range")
}

/// Uniform over all `2^(n_left * n_right)` graphs.
pub fn uniform_graph<R: Rng>(rng: &mut R, n_left: usize, n_right: usize) -> BipartiteGraph {
    random_graph(rng, n_left, n_right, 0.5)
}
