use crate::error::{Error, Result};
use crate::matrix::SparseMatrix;
use crate::partition::PartitionVector;

/// One entry of the transformed matrix, stored at row `max(i, j)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct TransformedEntry {
    /// `min(i, j)` of the original entry.
    pub col: usize,
    /// `true` when the original entry lies strictly below the diagonal.
    pub lower: bool,
    pub weight: u64,
}

/// Lower-triangular folding of a square matrix: `A(i, j)` moves to row
/// `max(i, j)`, column `min(i, j)`, flagged with `i > j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransformedMatrix {
    n: usize,
    row_ptr: Vec<usize>,
    entries: Vec<TransformedEntry>,
}

impl TransformedMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    /// Entries of transformed row `r`, ordered by `(col, lower)`.
    pub fn row(&self, r: usize) -> &[TransformedEntry] {
        &self.entries[self.row_ptr[r]..self.row_ptr[r + 1]]
    }
}

pub fn transform(a: &SparseMatrix) -> TransformedMatrix {
    let n = a.n();
    let mut row_ptr = vec![0usize; n + 1];
    for (i, j, _) in a.entries() {
        row_ptr[i.max(j) + 1] += 1;
    }
    for r in 0..n {
        row_ptr[r + 1] += row_ptr[r];
    }
    let mut fill = row_ptr.clone();
    let mut entries = vec![
        TransformedEntry {
            col: 0,
            lower: false,
            weight: 0
        };
        a.nnz()
    ];
    for (i, j, w) in a.entries() {
        let r = i.max(j);
        entries[fill[r]] = TransformedEntry {
            col: i.min(j),
            lower: i > j,
            weight: w,
        };
        fill[r] += 1;
    }
    for r in 0..n {
        entries[row_ptr[r]..row_ptr[r + 1]].sort_unstable();
    }
    TransformedMatrix { n, row_ptr, entries }
}

pub(crate) fn opal_limited(t: &TransformedMatrix, bound: u64, max_intervals: usize) -> Result<Option<PartitionVector>> {
    let n = t.n;
    let mut cuts = vec![0usize];
    // l1[k]: tile (current, k) incl. the diagonal; l2[k]: tile (k, current).
    let mut l1 = vec![0u64; 1];
    let mut l2 = vec![0u64; 1];
    let mut r = 0;
    while r < n {
        let current = cuts.len() - 1;
        let mut exceeded = false;
        for e in t.row(r) {
            let k = if e.col >= cuts[current] {
                current
            } else {
                cuts.partition_point(|&c| c <= e.col) - 1
            };
            let acc = if e.lower || k == current {
                &mut l1[k]
            } else {
                &mut l2[k]
            };
            *acc += e.weight;
            if *acc > bound {
                exceeded = true;
                break;
            }
        }
        if !exceeded {
            r += 1;
            continue;
        }
        if r == cuts[current] {
            return Err(Error::InfeasibleLoad {
                bound,
                position: r,
                partial: cuts,
            });
        }
        cuts.push(r);
        if cuts.len() > max_intervals {
            return Ok(None);
        }
        l1.clear();
        l1.resize(cuts.len(), 0);
        l2.clear();
        l2.resize(cuts.len(), 0);
    }
    cuts.push(n);
    Ok(Some(PartitionVector::from_sorted_unchecked(cuts)))
}

/// Single-sweep equivalent of [`pal`](super::pal): processes the transformed
/// matrix row by row and closes the current interval as soon as one of its
/// tiles would exceed `bound`.
pub fn opal(a: &SparseMatrix, bound: u64) -> Result<PartitionVector> {
    let t = transform(a);
    Ok(opal_limited(&t, bound, usize::MAX)?.expect("unbounded"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::toy_matrix;

    #[test]
    fn mapping_flags() {
        let a = SparseMatrix::from_entries(6, vec![(1, 5, 3), (5, 1, 4), (2, 2, 1)]).unwrap();
        let t = transform(&a);
        assert_eq!(
            t.row(5),
            &[
                TransformedEntry {
                    col: 1,
                    lower: false,
                    weight: 3
                },
                TransformedEntry {
                    col: 1,
                    lower: true,
                    weight: 4
                }
            ]
        );
        assert_eq!(t.row(2).len(), 1);
        assert!(t.row(0).is_empty());
    }

    #[test]
    fn toy_layout() {
        let t = transform(&toy_matrix());
        assert_eq!(t.nnz(), 14);
        let sizes: Vec<usize> = (0..6).map(|r| t.row(r).len()).collect();
        assert_eq!(sizes, vec![0, 0, 2, 2, 6, 4]);
        assert!(t.row(4).iter().all(|e| e.col < 4));
    }

    #[test]
    fn trivial_bounds() {
        let a = toy_matrix();
        assert_eq!(opal(&a, 14).unwrap().cuts(), &[0, 6]);
        let id = SparseMatrix::identity(5).unwrap();
        assert_eq!(opal(&id, 1).unwrap().cuts(), &[0, 1, 2, 3, 4, 5]);
    }

    #[test]
    fn infeasible_carries_partial() {
        let a = SparseMatrix::from_entries(4, vec![(0, 0, 1), (2, 2, 5)]).unwrap();
        match opal(&a, 4) {
            Err(Error::InfeasibleLoad { position, partial, .. }) => {
                assert_eq!(position, 2);
                assert_eq!(partial, vec![0, 2]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
