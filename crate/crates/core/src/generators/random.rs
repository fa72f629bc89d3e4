//! Seeded random connected regular graphs.
//!
//! Stubs are paired one pair at a time: a candidate pair that would create a
//! loop or a repeated edge is redrawn, and a run that gets stuck or ends
//! disconnected is discarded and restarted from scratch.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;

pub const DEFAULT_ATTEMPTS: usize = 1000;

pub fn random_regular_connected(n: usize, d: usize, seed: u64) -> Result<Graph> {
    random_regular_connected_with_budget(n, d, seed, DEFAULT_ATTEMPTS)
}

pub fn random_regular_connected_with_budget(
    n: usize,
    d: usize,
    seed: u64,
    max_attempts: usize,
) -> Result<Graph> {
    if !(n * d).is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!(
            "n·d must be even (n={n}, d={d})"
        )));
    }
    if d >= n {
        return Err(Error::InvalidParameter(format!("need d < n (n={n}, d={d})")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..max_attempts {
        if let Some(edges) = try_pairing(n, d, &mut rng) {
            let g = Graph::new(n, &edges, false)?;
            if g.is_connected() {
                return Ok(g);
            }
        }
    }
    Err(Error::GenerationFailed {
        n,
        d,
        attempts: max_attempts,
    })
}

fn try_pairing(n: usize, d: usize, rng: &mut impl Rng) -> Option<Vec<(usize, usize)>> {
    let mut stubs: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, d)).collect();
    let mut adjacent = vec![false; n * n];
    let mut edges = Vec::with_capacity(n * d / 2);
    let patience = 100 + stubs.len() * 4;
    while stubs.len() >= 2 {
        let mut failures = 0;
        loop {
            let i = rng.gen_range(0..stubs.len());
            let mut j = rng.gen_range(0..stubs.len() - 1);
            if j >= i {
                j += 1;
            }
            let (u, v) = (stubs[i], stubs[j]);
            if u != v && !adjacent[u * n + v] {
                adjacent[u * n + v] = true;
                adjacent[v * n + u] = true;
                edges.push((u, v));
                stubs.swap_remove(i.max(j));
                stubs.swap_remove(i.min(j));
                break;
            }
            failures += 1;
            if failures > patience {
                return None;
            }
        }
    }
    Some(edges)
}
