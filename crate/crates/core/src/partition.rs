use std::ops::Range;

use crate::error::{Error, Result};

/// A strictly increasing cut sequence `0 = c_0 < c_1 < ... < c_k = n`
/// splitting `[0, n)` into `k >= 1` contiguous intervals.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartitionVector {
    cuts: Vec<usize>,
}

impl PartitionVector {
    pub fn new(cuts: Vec<usize>, n: usize) -> Result<Self> {
        if cuts.len() < 2 {
            return Err(Error::InvalidPartition(format!("need at least two cuts, got {cuts:?}")));
        }
        if cuts[0] != 0 {
            return Err(Error::InvalidPartition(format!("first cut must be 0, got {}", cuts[0])));
        }
        if *cuts.last().unwrap() != n {
            return Err(Error::InvalidPartition(format!(
                "last cut must equal n = {n}, got {}",
                cuts.last().unwrap()
            )));
        }
        if let Some(w) = cuts.windows(2).find(|w| w[0] >= w[1]) {
            return Err(Error::InvalidPartition(format!(
                "cuts must be strictly increasing, found {} then {}",
                w[0], w[1]
            )));
        }
        Ok(Self { cuts })
    }

    /// The single interval `[0, n)`.
    pub fn single(n: usize) -> Self {
        assert!(n > 0, "dimension must be positive");
        Self { cuts: vec![0, n] }
    }

    pub(crate) fn from_sorted_unchecked(cuts: Vec<usize>) -> Self {
        debug_assert!(cuts.len() >= 2 && cuts[0] == 0);
        debug_assert!(cuts.windows(2).all(|w| w[0] < w[1]));
        Self { cuts }
    }

    pub fn cuts(&self) -> &[usize] {
        &self.cuts
    }

    pub fn into_cuts(self) -> Vec<usize> {
        self.cuts
    }

    /// Number of intervals.
    pub fn intervals(&self) -> usize {
        self.cuts.len() - 1
    }

    /// The covered dimension (last cut).
    pub fn n(&self) -> usize {
        *self.cuts.last().unwrap()
    }

    pub fn interval(&self, k: usize) -> Range<usize> {
        self.cuts[k]..self.cuts[k + 1]
    }

    /// Index of the interval containing `index`.
    pub fn locate(&self, index: usize) -> usize {
        debug_assert!(index < self.n());
        self.cuts.partition_point(|&c| c <= index) - 1
    }

    pub(crate) fn check_dimension(&self, n: usize) -> Result<()> {
        if self.n() != n {
            return Err(Error::InvalidPartition(format!(
                "partition covers {} indices but the matrix has n = {n}",
                self.n()
            )));
        }
        Ok(())
    }
}

/// Uniform cuts `c_i = floor(i * n / p)`.
pub fn uniform_partition(n: usize, p: usize) -> Result<PartitionVector> {
    if p == 0 || p > n {
        return Err(Error::Infeasible(format!(
            "cannot split {n} indices into {p} nonempty intervals"
        )));
    }
    let cuts = (0..=p)
        .map(|i| ((i as u128 * n as u128) / p as u128) as usize)
        .collect();
    Ok(PartitionVector::from_sorted_unchecked(cuts))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uniform_examples() {
        assert_eq!(uniform_partition(6, 3).unwrap().cuts(), &[0, 2, 4, 6]);
        assert_eq!(uniform_partition(10, 4).unwrap().cuts(), &[0, 2, 5, 7, 10]);
        assert_eq!(uniform_partition(7, 7).unwrap().cuts(), &[0, 1, 2, 3, 4, 5, 6, 7]);
        assert!(matches!(uniform_partition(3, 4), Err(Error::Infeasible(_))));
        assert!(uniform_partition(3, 0).is_err());
    }

    #[test]
    fn validation() {
        assert!(PartitionVector::new(vec![0, 3, 5, 6], 6).is_ok());
        assert!(PartitionVector::new(vec![0, 3, 3, 6], 6).is_err());
        assert!(PartitionVector::new(vec![1, 6], 6).is_err());
        assert!(PartitionVector::new(vec![0, 5], 6).is_err());
        assert!(PartitionVector::new(vec![0], 0).is_err());
    }

    #[test]
    fn locate_finds_interval() {
        let c = PartitionVector::new(vec![0, 3, 5, 6], 6).unwrap();
        let found: Vec<_> = (0..6).map(|i| c.locate(i)).collect();
        assert_eq!(found, vec![0, 0, 0, 1, 1, 2]);
        assert_eq!(c.interval(1), 3..5);
    }
}
