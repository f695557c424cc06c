//! Synthetic matrices: the 6-vertex toy graph, uniform random and R-MAT
//! (power-law) instances.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::matrix::SparseMatrix;

/// Undirected edges of the 6-vertex, 7-edge toy graph (0-based vertices).
///
/// `{2, 4}` is a minimum vertex cover.
pub const TOY_EDGES: [(usize, usize); 7] = [(0, 4), (1, 2), (1, 4), (2, 3), (2, 5), (3, 4), (4, 5)];

/// Symmetric unit-weight adjacency matrix of [`TOY_EDGES`] (6 x 6, 14 entries).
pub fn toy_matrix() -> SparseMatrix {
    SparseMatrix::from_pattern(6, TOY_EDGES.iter().flat_map(|&(u, v)| [(u, v), (v, u)])).expect("toy graph is valid")
}

/// `m` distinct uniformly placed entries with weights in `[1, max_weight]`.
pub fn random_matrix<R: Rng>(rng: &mut R, n: usize, m: usize, max_weight: u64) -> SparseMatrix {
    let m = m.min(n * n);
    let mut seen = HashSet::with_capacity(m);
    let mut entries = Vec::with_capacity(m);
    while entries.len() < m {
        let (r, c) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if seen.insert((r, c)) {
            entries.push((r, c, rng.gen_range(1..=max_weight)));
        }
    }
    SparseMatrix::from_entries(n, entries).expect("indices are in range")
}

/// R-MAT generator with quadrant probabilities `(0.57, 0.19, 0.19, 0.05)`
/// over a `2^scale` grid, producing `m` distinct unit entries.
pub fn rmat(scale: u32, m: usize, seed: u64) -> SparseMatrix {
    const PROBS: [f64; 3] = [0.57, 0.19, 0.19];
    let n = 1usize << scale;
    let m = m.min(n * n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = HashSet::with_capacity(m);
    let mut coords = Vec::with_capacity(m);
    while coords.len() < m {
        let (mut r, mut c) = (0usize, 0usize);
        for level in (0..scale).rev() {
            let x: f64 = rng.gen();
            let (dr, dc) = if x < PROBS[0] {
                (0, 0)
            } else if x < PROBS[0] + PROBS[1] {
                (0, 1)
            } else if x < PROBS[0] + PROBS[1] + PROBS[2] {
                (1, 0)
            } else {
                (1, 1)
            };
            r |= dr << level;
            c |= dc << level;
        }
        if seen.insert((r, c)) {
            coords.push((r, c));
        }
    }
    SparseMatrix::from_pattern(n, coords).expect("indices are in range")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn toy_shape() {
        let a = toy_matrix();
        assert_eq!((a.n(), a.nnz()), (6, 14));
        assert!(a.is_symmetric());
    }

    #[test]
    fn rmat_is_deterministic_and_exact() {
        let a = rmat(8, 2000, 7);
        assert_eq!(a.nnz(), 2000);
        assert_eq!(a, rmat(8, 2000, 7));
    }
}
