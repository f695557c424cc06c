//! Square sparse matrix with nonnegative integer weights, stored row-compressed.

use crate::error::{Error, Result};

/// An `n x n` sparse matrix with integer weights `>= 1`.
///
/// Entries are kept in row-compressed form with strictly increasing column
/// indices inside each row, so no coordinate appears twice. Zero weights are
/// dropped on construction and duplicate coordinates are summed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    n: usize,
    row_ptr: Vec<usize>,
    cols: Vec<usize>,
    weights: Vec<u64>,
    total: u64,
}

impl SparseMatrix {
    /// Builds a matrix from `(row, col, weight)` triplets with 0-based indices.
    pub fn from_entries<I>(n: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, u64)>,
    {
        if n == 0 {
            return Err(Error::InvalidMatrix("dimension must be at least 1".into()));
        }
        let mut triplets = Vec::new();
        for (r, c, w) in entries {
            if r >= n || c >= n {
                return Err(Error::OutOfRange { row: r, col: c, n });
            }
            if w > 0 {
                triplets.push((r, c, w));
            }
        }
        triplets.sort_unstable_by_key(|&(r, c, _)| (r, c));

        let mut row_ptr = vec![0usize; n + 1];
        let mut cols = Vec::with_capacity(triplets.len());
        let mut weights: Vec<u64> = Vec::with_capacity(triplets.len());
        let mut merged = 0usize;
        let mut last: Option<(usize, usize)> = None;
        for (r, c, w) in triplets {
            if last == Some((r, c)) {
                *weights.last_mut().unwrap() += w;
                merged += 1;
                continue;
            }
            last = Some((r, c));
            row_ptr[r + 1] += 1;
            cols.push(c);
            weights.push(w);
        }
        if merged > 0 {
            log::warn!("merged {merged} duplicate coordinates by summation");
        }
        for i in 0..n {
            row_ptr[i + 1] += row_ptr[i];
        }
        let total = weights.iter().sum();
        Ok(Self {
            n,
            row_ptr,
            cols,
            weights,
            total,
        })
    }

    /// Builds a unit-weight matrix from a coordinate list.
    pub fn from_pattern<I>(n: usize, coords: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        Self::from_entries(n, coords.into_iter().map(|(r, c)| (r, c, 1)))
    }

    /// An `n x n` matrix without entries.
    pub fn empty(n: usize) -> Result<Self> {
        Self::from_entries(n, std::iter::empty())
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::from_pattern(n, (0..n).map(|i| (i, i)))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of stored entries (`m`).
    pub fn nnz(&self) -> usize {
        self.cols.len()
    }

    /// Sum of all entry weights.
    pub fn total_weight(&self) -> u64 {
        self.total
    }

    pub fn max_weight(&self) -> u64 {
        self.weights.iter().copied().max().unwrap_or(0)
    }

    /// True when every stored entry has weight one.
    pub fn is_unit_weight(&self) -> bool {
        self.weights.iter().all(|&w| w == 1)
    }

    /// Column indices and weights of row `i`, sorted by column.
    pub fn row(&self, i: usize) -> impl Iterator<Item = (usize, u64)> + '_ {
        let range = self.row_ptr[i]..self.row_ptr[i + 1];
        self.cols[range.clone()]
            .iter()
            .copied()
            .zip(self.weights[range].iter().copied())
    }

    pub fn row_cols(&self, i: usize) -> &[usize] {
        &self.cols[self.row_ptr[i]..self.row_ptr[i + 1]]
    }

    pub fn row_weights(&self, i: usize) -> &[u64] {
        &self.weights[self.row_ptr[i]..self.row_ptr[i + 1]]
    }

    /// All entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, u64)> + '_ {
        (0..self.n).flat_map(move |i| self.row(i).map(move |(j, w)| (i, j, w)))
    }

    /// Per-row sums of weights.
    pub fn row_sums(&self) -> Vec<u64> {
        (0..self.n).map(|i| self.row_weights(i).iter().sum()).collect()
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        let cols = self.row_cols(i);
        match cols.binary_search(&j) {
            Ok(k) => self.row_weights(i)[k],
            Err(_) => 0,
        }
    }

    /// The transposed matrix: entry `(i, j, w)` becomes `(j, i, w)`.
    pub fn transpose(&self) -> SparseMatrix {
        let n = self.n;
        let mut row_ptr = vec![0usize; n + 1];
        for &c in &self.cols {
            row_ptr[c + 1] += 1;
        }
        for i in 0..n {
            row_ptr[i + 1] += row_ptr[i];
        }
        let mut next = row_ptr.clone();
        let mut cols = vec![0usize; self.nnz()];
        let mut weights = vec![0u64; self.nnz()];
        // Source rows are visited in increasing order, so each output row
        // receives its columns already sorted.
        for (i, j, w) in self.entries() {
            let slot = next[j];
            cols[slot] = i;
            weights[slot] = w;
            next[j] += 1;
        }
        SparseMatrix {
            n,
            row_ptr,
            cols,
            weights,
            total: self.total,
        }
    }

    /// True when `A(i, j) == A(j, i)` for every coordinate.
    pub fn is_symmetric(&self) -> bool {
        self.entries().all(|(i, j, w)| self.get(j, i) == w)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn duplicates_are_summed_and_zeros_dropped() {
        let a = SparseMatrix::from_entries(3, vec![(0, 1, 2), (2, 2, 0), (0, 1, 3), (1, 0, 1)]).unwrap();
        assert_eq!(a.nnz(), 2);
        assert_eq!(a.get(0, 1), 5);
        assert_eq!(a.get(2, 2), 0);
        assert_eq!(a.total_weight(), 6);
    }

    #[test]
    fn rejects_out_of_range() {
        let err = SparseMatrix::from_pattern(2, vec![(0, 2)]).unwrap_err();
        assert!(matches!(err, Error::OutOfRange { row: 0, col: 2, n: 2 }));
        assert!(SparseMatrix::empty(0).is_err());
    }

    #[test]
    fn transpose_is_involution() {
        let a = SparseMatrix::from_entries(4, vec![(0, 3, 2), (1, 0, 1), (3, 3, 7), (2, 1, 4)]).unwrap();
        let t = a.transpose();
        assert_eq!(t.get(3, 0), 2);
        assert_eq!(t.get(0, 1), 1);
        assert_eq!(t.transpose(), a);
    }

    #[test]
    fn symmetric_matrix_equals_transpose() {
        let a = SparseMatrix::from_pattern(3, vec![(0, 1), (1, 0), (2, 2)]).unwrap();
        assert!(a.is_symmetric());
        assert_eq!(a.transpose(), a);
    }
}
