//! Fixed inputs shared by the benchmarks.

use bohemian_spread::bohemian::{AValue, SymBohemian};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `n` reproducible random `{1, a}` matrices of dimension `m`.
pub fn random_matrices(m: usize, n: usize, a: AValue) -> Vec<SymBohemian> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let pairs = m * (m - 1) / 2;
    (0..n)
        .map(|_| {
            let d = rng.random_range(0..1u64 << m);
            let u = rng.random_range(0..1u64 << pairs);
            SymBohemian::new(m, d, u, a.clone())
        })
        .collect()
}

/// Reproducible random adjacency bitsets on `m` vertices.
pub fn random_graphs(m: usize, n: usize) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let pairs = m * (m - 1) / 2;
    (0..n).map(|_| rng.random_range(0..1u64 << pairs)).collect()
}
