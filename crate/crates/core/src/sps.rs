//! Sparse prefix sum: a persistent binary indexed tree over column indices,
//! versioned by row.
//!
//! Entries are inserted in row-major order and every BIT position keeps a fat
//! node: the list of `(version, cumulative value)` pairs written to it, where
//! the version is the 1-based row index. A query for rows `<= i` and columns
//! `<= j` walks the usual BIT query chain for `j` and, at every position, reads
//! the value of the latest version `<= i`.
//!
//! Versions of all positions are stored back to back in a compressed-column
//! layout (`ptr`, `versions`, `values`); per-position version counts are
//! computed before allocation.

use crate::error::{Error, Result};
use crate::matrix::SparseMatrix;

/// Anything that can report the load of the leading rectangle
/// `rows [0, i) x cols [0, j)` (0-based, half-open).
pub trait PrefixLoad {
    fn dim(&self) -> usize;

    /// Load of `rows [0, i) x cols [0, j)`. Callers guarantee `i, j <= dim()`.
    fn prefix(&self, i: usize, j: usize) -> u64;

    /// Load of `rows [r0, r1) x cols [c0, c1)` by inclusion-exclusion.
    fn rect(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> u64 {
        self.prefix(r1, c1) + self.prefix(r0, c0) - self.prefix(r0, c1) - self.prefix(r1, c0)
    }
}

#[inline]
fn lsb(t: usize) -> usize {
    t & t.wrapping_neg()
}

#[derive(Debug, Clone)]
pub struct SparsePrefixSum {
    n: usize,
    // ptr[t-1]..ptr[t] holds the versions of BIT position t (1-based).
    ptr: Vec<usize>,
    versions: Vec<u32>,
    values: Vec<u64>,
}

impl SparsePrefixSum {
    pub fn new(a: &SparseMatrix) -> Self {
        let n = a.n();
        assert!(n < u32::MAX as usize, "dimension exceeds version range");

        // Count distinct (row, position) pairs, i.e. versions per position.
        let mut counts = vec![0usize; n + 1];
        let mut last_row = vec![usize::MAX; n + 1];
        for i in 0..n {
            for &j in a.row_cols(i) {
                let mut t = j + 1;
                while t <= n {
                    if last_row[t] == i {
                        // Positions above t on this chain were already touched
                        // by an earlier column of the same row.
                        break;
                    }
                    last_row[t] = i;
                    counts[t] += 1;
                    t += lsb(t);
                }
            }
        }
        let mut ptr = vec![0usize; n + 1];
        for t in 1..=n {
            ptr[t] = ptr[t - 1] + counts[t];
        }
        let len = ptr[n];
        let mut versions = vec![0u32; len];
        let mut values = vec![0u64; len];
        // fill[t] = number of versions written so far at position t.
        let mut fill = vec![0usize; n + 1];
        for i in 0..n {
            let version = (i + 1) as u32;
            for (j, w) in a.row(i) {
                let mut t = j + 1;
                while t <= n {
                    let start = ptr[t - 1];
                    let k = fill[t];
                    if k > 0 && versions[start + k - 1] == version {
                        values[start + k - 1] += w;
                    } else {
                        let prev = if k > 0 { values[start + k - 1] } else { 0 };
                        versions[start + k] = version;
                        values[start + k] = prev + w;
                        fill[t] += 1;
                    }
                    t += lsb(t);
                }
            }
        }
        debug_assert_eq!(fill[1..], counts[1..]);
        let sps = Self {
            n,
            ptr,
            versions,
            values,
        };
        let levels = n.ilog2() as usize + 1;
        assert!(sps.stored_pairs() <= a.nnz() * levels);
        sps
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Total number of stored `(version, value)` pairs.
    pub fn stored_pairs(&self) -> usize {
        self.versions.len()
    }

    /// The `(version, cumulative value)` pairs of 1-based BIT position `t`.
    pub fn position(&self, t: usize) -> impl Iterator<Item = (usize, u64)> + '_ {
        let range = self.ptr[t - 1]..self.ptr[t];
        self.versions[range.clone()]
            .iter()
            .map(|&v| v as usize)
            .zip(self.values[range].iter().copied())
    }

    #[inline]
    fn latest_at(&self, t: usize, version: usize) -> u64 {
        let range = self.ptr[t - 1]..self.ptr[t];
        let versions = &self.versions[range.clone()];
        let k = versions.partition_point(|&v| (v as usize) <= version);
        if k == 0 {
            0
        } else {
            self.values[range.start + k - 1]
        }
    }

    #[inline]
    fn query_unchecked(&self, i: usize, mut j: usize) -> u64 {
        if i == 0 {
            return 0;
        }
        let mut total = 0;
        while j > 0 {
            total += self.latest_at(j, i);
            j -= lsb(j);
        }
        total
    }

    /// Load of the rectangle from `(1, 1)` to `(i, j)` in 1-based terms, i.e.
    /// all entries with row `< i` and column `< j` when 0-based.
    pub fn query(&self, i: usize, j: usize) -> Result<u64> {
        if i > self.n || j > self.n {
            return Err(Error::OutOfRange {
                row: i,
                col: j,
                n: self.n,
            });
        }
        Ok(self.query_unchecked(i, j))
    }

    /// Load of the half-open 0-based rectangle `[r0, r1) x [c0, c1)`.
    pub fn rect_load(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Result<u64> {
        if r0 > r1 || c0 > c1 || r1 > self.n || c1 > self.n {
            return Err(Error::InvalidRectangle {
                r0,
                r1,
                c0,
                c1,
                n: self.n,
            });
        }
        Ok(self.rect(r0, r1, c0, c1))
    }
}

impl PrefixLoad for SparsePrefixSum {
    fn dim(&self) -> usize {
        self.n
    }

    fn prefix(&self, i: usize, j: usize) -> u64 {
        self.query_unchecked(i, j)
    }
}

/// Rectangle loads computed straight from the matrix rows, without building a
/// prefix structure. `prefix(i, j)` costs `O(i log d)` for row degree `d`.
#[derive(Debug, Clone, Copy)]
pub struct DirectScan<'a> {
    matrix: &'a SparseMatrix,
}

impl<'a> DirectScan<'a> {
    pub fn new(matrix: &'a SparseMatrix) -> Self {
        Self { matrix }
    }
}

impl PrefixLoad for DirectScan<'_> {
    fn dim(&self) -> usize {
        self.matrix.n()
    }

    fn prefix(&self, i: usize, j: usize) -> u64 {
        (0..i)
            .map(|r| {
                let cols = self.matrix.row_cols(r);
                let k = cols.partition_point(|&c| c < j);
                self.matrix.row_weights(r)[..k].iter().sum::<u64>()
            })
            .sum()
    }

    fn rect(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> u64 {
        (r0..r1)
            .map(|r| {
                let cols = self.matrix.row_cols(r);
                let lo = cols.partition_point(|&c| c < c0);
                let hi = cols.partition_point(|&c| c < c1);
                self.matrix.row_weights(r)[lo..hi].iter().sum::<u64>()
            })
            .sum()
    }
}
