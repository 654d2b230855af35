//! Seeded random instances.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Vertex, WeightedGraph};

const MAX_ATTEMPTS: usize = 10_000;

/// `m` distinct edges drawn uniformly from all vertex pairs, weights uniform
/// in `1..=wmax`, vertices `0..p` as terminals. Edge sets leaving a terminal
/// isolated are redrawn. The same arguments always give the same graph.
pub fn generate(n: usize, m: usize, p: usize, wmax: u64, seed: u64) -> Result<WeightedGraph> {
    let pairs = n * n.saturating_sub(1) / 2;
    if p == 0 || p > n {
        return Err(Error::BadParameters(format!("need 1 <= p <= n, got p={p}, n={n}")));
    }
    if m > pairs {
        return Err(Error::BadParameters(format!("{m} edges do not fit in a simple graph on {n} vertices")));
    }
    if wmax == 0 {
        return Err(Error::BadParameters("wmax must be at least 1".into()));
    }
    if 2 * m < p {
        return Err(Error::BadParameters(format!("{m} edges cannot touch all {p} terminals")));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_ATTEMPTS {
        let mut chosen = sample(&mut rng, pairs, m).into_vec();
        chosen.sort_unstable();
        let edges: Vec<(usize, usize)> = chosen.into_iter().map(|i| unrank_pair(n, i)).collect();
        let mut touched = vec![false; p];
        for &(u, v) in &edges {
            if u < p {
                touched[u] = true;
            }
            if v < p {
                touched[v] = true;
            }
        }
        if touched.iter().all(|&t| t) {
            let terminals = (0..p).map(Vertex::from).collect();
            let weighted: Vec<_> = edges
                .into_iter()
                .map(|(u, v)| (Vertex::from(u), Vertex::from(v), rng.gen_range(1..=wmax)))
                .collect();
            return WeightedGraph::from_edges(n, terminals, weighted);
        }
    }
    Err(Error::BadParameters(format!("no sample without isolated terminals after {MAX_ATTEMPTS} attempts")))
}

/// The `i`-th pair `(u, v)`, `u < v`, in row-major order.
fn unrank_pair(n: usize, mut i: usize) -> (usize, usize) {
    for u in 0..n {
        let row = n - u - 1;
        if i < row {
            return (u, u + 1 + i);
        }
        i -= row;
    }
    unreachable!("pair index out of range")
}
