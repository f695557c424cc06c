//! Random nonzero sampling.
//!
//! Every entry is kept independently with probability `s`. The coin for the
//! entry with row-major ordinal `k` is
//! `splitmix64(splitmix64(seed) + (k + 1) * GAMMA)`,
//! whose top 53 bits are read as a uniform value in `[0, 1)`; the entry is
//! kept when that value is below `s`. Decisions depend only on `(seed, k)`, so
//! results are identical across platforms and thread counts.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::SparseMatrix;

const GAMMA: u64 = 0x9e37_79b9_7f4a_7c15;

fn splitmix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Uniform value in `[0, 1)` for entry `ordinal` under `seed`.
pub fn coin(seed: u64, ordinal: u64) -> f64 {
    let base = splitmix64(seed);
    let bits = splitmix64(base.wrapping_add(ordinal.wrapping_add(1).wrapping_mul(GAMMA)));
    (bits >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum SparsifyMode {
    Off,
    /// Fixed keep probability `s` in `(0, 1]`.
    Factor {
        s: f64,
    },
    /// Target relative error `eps` in `(0, 1)`; `s` follows from [`auto_factor`].
    Tolerance {
        eps: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SparsifyConfig {
    pub mode: SparsifyMode,
    pub seed: u64,
    /// Interval count used to turn a tolerance into a factor.
    pub p_hint: usize,
}

impl SparsifyConfig {
    pub fn off() -> Self {
        Self {
            mode: SparsifyMode::Off,
            seed: 0,
            p_hint: 1,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self.mode {
            SparsifyMode::Off => Ok(()),
            SparsifyMode::Factor { s } if s > 0.0 && s <= 1.0 => Ok(()),
            SparsifyMode::Factor { s } => Err(Error::InvalidConfig(format!(
                "sparsification factor {s} is outside (0, 1]"
            ))),
            SparsifyMode::Tolerance { eps } if eps > 0.0 && eps < 1.0 && self.p_hint >= 1 => Ok(()),
            SparsifyMode::Tolerance { eps } => Err(Error::InvalidConfig(format!(
                "tolerance {eps} is outside (0, 1) or the p hint is 0"
            ))),
        }
    }

    /// Keep probability for a matrix with `m` nonzeros.
    pub fn factor(&self, m: usize) -> f64 {
        match self.mode {
            SparsifyMode::Off => 1.0,
            SparsifyMode::Factor { s } => s,
            SparsifyMode::Tolerance { eps } => auto_factor(m, self.p_hint, eps),
        }
    }
}

/// Keep each entry with probability `s`; weights are not rescaled and `n` is
/// preserved.
pub fn sparsify_with_factor(a: &SparseMatrix, s: f64, seed: u64) -> SparseMatrix {
    if s >= 1.0 {
        return a.clone();
    }
    let kept = a
        .entries()
        .enumerate()
        .filter(|&(k, _)| coin(seed, k as u64) < s)
        .map(|(_, e)| e);
    SparseMatrix::from_entries(a.n(), kept).expect("subset of a valid matrix")
}

/// Returns the sampled matrix and the factor used.
pub fn sparsify(a: &SparseMatrix, cfg: &SparsifyConfig) -> Result<(SparseMatrix, f64)> {
    cfg.validate()?;
    let s = cfg.factor(a.nnz());
    Ok((sparsify_with_factor(a, s, cfg.seed), s))
}

/// Keep probability whose predicted relative tile-load error is `eps`:
/// `s = p^2 / (eps^2 m + p^2)`, clamped to 1.
pub fn auto_factor(m: usize, p: usize, eps: f64) -> f64 {
    if eps >= 1.0 || m == 0 {
        return 1.0;
    }
    let p2 = (p as f64).powi(2);
    (p2 / (eps * eps * m as f64 + p2)).min(1.0)
}

/// Predicted relative error `sqrt((1 - s) p^2 / (m s))`.
pub fn predicted_error(m: usize, p: usize, s: f64) -> f64 {
    ((1.0 - s) * (p as f64).powi(2) / (m as f64 * s)).sqrt()
}

/// `ceil(z * s)`, with products within rounding noise of an integer snapped
/// to it.
pub fn scale_bound(z: u64, s: f64) -> u64 {
    let x = z as f64 * s;
    let r = x.round();
    if (x - r).abs() <= 1e-9 * x.max(1.0) {
        r as u64
    } else {
        x.ceil() as u64
    }
}

/// Interval-count hint for a load bound: `ceil(n / ceil(sqrt(z)))`.
pub fn mnc_p_hint(n: usize, z: u64) -> usize {
    if z == 0 {
        return n.max(1);
    }
    let mut side = (z as f64).sqrt().ceil() as u64;
    while side > 1 && (side - 1) * (side - 1) >= z {
        side -= 1;
    }
    while side * side < z {
        side += 1;
    }
    n.div_ceil(side as usize).max(1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::random_matrix;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn keep_all_is_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let a = random_matrix(&mut rng, 30, 200, 3);
        assert_eq!(sparsify_with_factor(&a, 1.0, 9), a);
        let (b, s) = sparsify(&a, &SparsifyConfig::off()).unwrap();
        assert_eq!((b, s), (a, 1.0));
    }

    #[test]
    fn reproducible_and_keeps_dimension() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let a = random_matrix(&mut rng, 50, 300, 1);
        let x = sparsify_with_factor(&a, 0.3, 42);
        assert_eq!(x, sparsify_with_factor(&a, 0.3, 42));
        assert_ne!(x, sparsify_with_factor(&a, 0.3, 43));
        assert_eq!(x.n(), 50);
        let tiny = sparsify_with_factor(&a, 1e-9, 42);
        assert_eq!((tiny.n(), tiny.nnz()), (50, 0));
    }

    #[test]
    fn factor_for_large_corpus() {
        let e = predicted_error(11_000_000, 8, 0.1);
        assert!((e - 0.007).abs() < 1e-3, "{e}");
        let s = auto_factor(11_000_000, 8, e);
        assert!((s - 0.1).abs() < 1e-12);
    }

    #[test]
    fn clamps() {
        assert_eq!(auto_factor(100, 4, 1.0), 1.0);
        assert_eq!(auto_factor(100, 4, 2.0), 1.0);
        assert!(auto_factor(4, 4, 0.01) > 0.99);
    }

    #[test]
    fn round_trip() {
        for &(m, p, eps) in &[(1000usize, 4usize, 0.05f64), (1_000_000, 32, 0.01), (50_000, 8, 0.2)] {
            let s = auto_factor(m, p, eps);
            assert!((predicted_error(m, p, s) - eps).abs() < 1e-12);
        }
    }

    #[test]
    fn bounds_and_hints() {
        assert_eq!(scale_bound(1000, 1.0), 1000);
        assert_eq!(scale_bound(1000, 0.1), 100);
        assert_eq!(scale_bound(7, 0.5), 4);
        assert_eq!(mnc_p_hint(100, 16), 25);
        assert_eq!(mnc_p_hint(100, 17), 20);
        assert_eq!(mnc_p_hint(10, 1000), 1);
    }

    #[test]
    fn config_validation() {
        let bad = SparsifyConfig {
            mode: SparsifyMode::Factor { s: 0.0 },
            seed: 0,
            p_hint: 1,
        };
        assert!(bad.validate().is_err());
        let bad = SparsifyConfig {
            mode: SparsifyMode::Tolerance { eps: 1.5 },
            seed: 0,
            p_hint: 4,
        };
        assert!(bad.validate().is_err());
    }
}
