//! Shared fixtures for the benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rpoisson_core::{GF2Matrix, GF2Vector};

/// Uniformly random `rows × cols` matrix from a fixed seed.
pub fn random_matrix(rows: usize, cols: usize, seed: u64) -> GF2Matrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rows: Vec<GF2Vector> = (0..rows)
        .map(|_| GF2Vector::from_indices(cols, (0..cols).filter(|_| rng.gen_bool(0.5)).collect::<Vec<_>>()))
        .collect();
    GF2Matrix::from_rows(cols, &rows)
}
