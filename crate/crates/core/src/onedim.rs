//! Optimal 1D bottleneck partitioning and the refinement kernel that reduces
//! a 2D partition with fixed column cuts to it.
//!
//! For a fixed column partition with `q` intervals, the cost of a row interval
//! `[a, b)` is the largest of its `q` strip sums. The optimal row partition
//! minimizes the largest interval cost, which is exactly the maximum tile load
//! for the given column cuts.

use crate::error::{Error, Result};
use crate::matrix::SparseMatrix;
use crate::partition::PartitionVector;

/// Per-column-interval prefix sums over rows: `prefix(i, j)` is the load of
/// rows `[0, i)` inside column interval `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalSumTable {
    rows: usize,
    intervals: usize,
    prefix: Vec<u64>,
}

impl IntervalSumTable {
    /// Builds the table from per-row strip loads, `row_loads[i][j]`.
    pub fn from_row_loads(row_loads: &[Vec<u64>]) -> Result<Self> {
        let intervals = row_loads.first().map_or(0, Vec::len);
        if intervals == 0 || row_loads.iter().any(|r| r.len() != intervals) {
            return Err(Error::InvalidMatrix(
                "row loads must be a nonempty rectangular table".into(),
            ));
        }
        let rows = row_loads.len();
        let mut prefix = vec![0u64; (rows + 1) * intervals];
        for (i, r) in row_loads.iter().enumerate() {
            for j in 0..intervals {
                prefix[(i + 1) * intervals + j] = prefix[i * intervals + j] + r[j];
            }
        }
        Ok(Self {
            rows,
            intervals,
            prefix,
        })
    }

    /// Number of rows (`n`).
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Number of column intervals.
    pub fn intervals(&self) -> usize {
        self.intervals
    }

    pub fn prefix(&self, i: usize, j: usize) -> u64 {
        self.prefix[i * self.intervals + j]
    }

    /// Load of rows `[a, b)` in column interval `j`.
    pub fn strip(&self, a: usize, b: usize, j: usize) -> u64 {
        self.prefix(b, j) - self.prefix(a, j)
    }

    /// Cost of the row interval `[a, b)`: its heaviest strip.
    pub fn cost(&self, a: usize, b: usize) -> u64 {
        let (lo, hi) = (a * self.intervals, b * self.intervals);
        self.prefix[hi..hi + self.intervals]
            .iter()
            .zip(&self.prefix[lo..lo + self.intervals])
            .map(|(h, l)| h - l)
            .max()
            .unwrap_or(0)
    }

    /// Largest interval cost under the row cuts `cuts`.
    pub fn bottleneck(&self, cuts: &PartitionVector) -> u64 {
        cuts.cuts().windows(2).map(|w| self.cost(w[0], w[1])).max().unwrap_or(0)
    }
}

/// Strip sums of `a` for the column partition `col_cuts`, in one row-major pass.
pub fn build_interval_sums(a: &SparseMatrix, col_cuts: &PartitionVector) -> Result<IntervalSumTable> {
    col_cuts.check_dimension(a.n())?;
    let n = a.n();
    let q = col_cuts.intervals();
    let mut prefix = vec![0u64; (n + 1) * q];
    for i in 0..n {
        let (done, rest) = prefix.split_at_mut((i + 1) * q);
        let row = &mut rest[..q];
        row.copy_from_slice(&done[i * q..]);
        // Columns are sorted, so the interval index only moves forward.
        let mut k = 0;
        for (j, w) in a.row(i) {
            while j >= col_cuts.cuts()[k + 1] {
                k += 1;
            }
            row[k] += w;
        }
    }
    Ok(IntervalSumTable {
        rows: n,
        intervals: q,
        prefix,
    })
}

/// Greedy probe for bottleneck `bound`: every interval extends as far as the
/// bound allows while leaving at least one row for each remaining interval.
/// Returns exactly `p` intervals, or `None` when `bound` is too small.
fn probe(table: &IntervalSumTable, p: usize, bound: u64) -> Option<Vec<usize>> {
    let n = table.rows();
    let mut cuts = Vec::with_capacity(p + 1);
    cuts.push(0);
    let mut start = 0;
    for remaining in (1..=p).rev() {
        if remaining == 1 {
            if table.cost(start, n) > bound {
                return None;
            }
            cuts.push(n);
            return Some(cuts);
        }
        if table.cost(start, start + 1) > bound {
            return None;
        }
        // Largest end in [start + 1, n - remaining + 1] with cost <= bound.
        let (mut lo, mut hi) = (start + 1, n + 1 - remaining);
        while lo < hi {
            let mid = lo + (hi - lo).div_ceil(2);
            if table.cost(start, mid) <= bound {
                lo = mid;
            } else {
                hi = mid - 1;
            }
        }
        cuts.push(lo);
        start = lo;
    }
    unreachable!("loop returns on the last interval")
}

/// Row partition into `p` intervals minimizing the bottleneck.
///
/// Binary search over the integer bottleneck with the greedy probe, then
/// [`place_cuts`] picks one optimal partition deterministically.
pub fn optimal_1d_partition(table: &IntervalSumTable, p: usize) -> Result<PartitionVector> {
    let n = table.rows();
    if p == 0 || p > n {
        return Err(Error::Infeasible(format!(
            "cannot split {n} rows into {p} nonempty intervals"
        )));
    }
    let mut lo = (0..n).map(|i| table.cost(i, i + 1)).max().unwrap_or(0);
    let mut hi = table.cost(0, n);
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if probe(table, p, mid).is_some() {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    let cuts = place_cuts(table, p, lo);
    debug_assert_eq!(
        table.bottleneck(&PartitionVector::from_sorted_unchecked(cuts.clone())),
        lo
    );
    Ok(PartitionVector::from_sorted_unchecked(cuts))
}

/// Chooses `p` intervals with cost at most `bound`, which must be feasible.
///
/// Each cut is restricted to the positions that still admit a completion
/// within `bound`; inside that range it goes where the cumulative row load is
/// closest to its share `i / p` of the total, then closest to the uniform
/// position `i * n / p`, then leftmost.
fn place_cuts(table: &IntervalSumTable, p: usize, bound: u64) -> Vec<usize> {
    let n = table.rows();
    // min_start[k]: smallest s such that [s, n) fits in at most k intervals.
    let mut min_start = vec![n; p];
    for k in 1..p {
        let end = min_start[k - 1];
        min_start[k] = if end == 0 {
            0
        } else {
            let (mut lo, mut hi) = (0, end - 1);
            while lo < hi {
                let mid = lo + (hi - lo) / 2;
                if table.cost(mid, end) <= bound {
                    hi = mid;
                } else {
                    lo = mid + 1;
                }
            }
            lo
        };
    }
    let row_load = |c: usize| -> u128 { (0..table.intervals()).map(|j| table.prefix(c, j) as u128).sum() };
    let total = row_load(n);
    let mut cuts = Vec::with_capacity(p + 1);
    cuts.push(0);
    let mut prev = 0;
    for i in 1..p {
        let after = p - i;
        let last = n - after;
        let (mut lo, mut hi) = (prev + 1, last);
        while lo < hi {
            let mid = lo + (hi - lo).div_ceil(2);
            if table.cost(prev, mid) <= bound {
                lo = mid;
            } else {
                hi = mid - 1;
            }
        }
        let upper = lo;
        let lower = (prev + 1).max(min_start[after].min(last));
        debug_assert!(lower <= upper);

        let target = total * i as u128;
        let load_gap = |c: usize| (row_load(c) * p as u128).abs_diff(target);
        let index_gap = |c: usize| (c * p).abs_diff(i * n);
        // First position in range whose scaled load reaches the target; the
        // closest load is there or one step to the left.
        let (mut lo, mut hi) = (lower, upper);
        while lo < hi {
            let mid = lo + (hi - lo) / 2;
            if row_load(mid) * p as u128 >= target {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        let key = |c: usize| (load_gap(c), index_gap(c), c);
        let mut best = lo;
        if lo > lower && key(lo - 1) < key(best) {
            best = lo - 1;
        }
        // Every position sharing that load is equally good; prefer the one
        // nearest the uniform position.
        let (left, right) = plateau(&row_load, best, lower, upper);
        let ideal = i * n / p;
        for c in [ideal.clamp(left, right), (ideal + 1).clamp(left, right)] {
            if key(c) < key(best) {
                best = c;
            }
        }
        cuts.push(best);
        prev = best;
    }
    cuts.push(n);
    cuts
}

/// Extent of the run of positions around `at`, within `[lower, upper]`,
/// sharing its cumulative load.
fn plateau(row_load: &dyn Fn(usize) -> u128, at: usize, lower: usize, upper: usize) -> (usize, usize) {
    let value = row_load(at);
    let (mut lo, mut hi) = (lower, at);
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if row_load(mid) == value {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    let left = lo;
    let (mut lo, mut hi) = (at, upper);
    while lo < hi {
        let mid = lo + (hi - lo).div_ceil(2);
        if row_load(mid) == value {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    (left, lo)
}

/// Optimal row partition into `p` intervals for the fixed column cuts.
pub fn refinement(a: &SparseMatrix, col_cuts: &PartitionVector, p: usize) -> Result<PartitionVector> {
    let table = build_interval_sums(a, col_cuts)?;
    optimal_1d_partition(&table, p)
}
