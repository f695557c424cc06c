use crate::error::{Error, Result};
use crate::matrix::SparseMatrix;
use crate::partition::PartitionVector;
use crate::sps::PrefixLoad;

/// Outcome of one probe for the next cut.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProbeResult {
    /// Furthest feasible cut, or the last existing cut when infeasible.
    pub cut: usize,
    pub feasible: bool,
    /// Heaviest newly formed tile at `cut` (at `cut + 1` when infeasible).
    pub max_load: u64,
}

/// Loads of the tiles created by closing the interval `[start, t)` after the
/// cuts `cuts` (whose last element is `start`).
struct Frontier<'a, Q: ?Sized> {
    loads: &'a Q,
    cuts: &'a [usize],
    // P(start, c_m) and P(c_m, start) for every existing cut c_m.
    row_base: Vec<u64>,
    col_base: Vec<u64>,
}

impl<'a, Q: PrefixLoad + ?Sized> Frontier<'a, Q> {
    fn new(loads: &'a Q, cuts: &'a [usize]) -> Self {
        let start = *cuts.last().unwrap();
        let row_base = cuts.iter().map(|&c| loads.prefix(start, c)).collect();
        let col_base = cuts.iter().map(|&c| loads.prefix(c, start)).collect();
        Self {
            loads,
            cuts,
            row_base,
            col_base,
        }
    }

    /// Heaviest of the new row-strip, column-strip and diagonal tiles.
    fn max_tile(&self, t: usize) -> u64 {
        let k = self.cuts.len() - 1;
        let row_t: Vec<u64> = self.cuts.iter().map(|&c| self.loads.prefix(t, c)).collect();
        let col_t: Vec<u64> = self.cuts.iter().map(|&c| self.loads.prefix(c, t)).collect();
        let mut max = 0;
        for m in 0..k {
            let row_tile = row_t[m + 1] + self.row_base[m] - row_t[m] - self.row_base[m + 1];
            let col_tile = col_t[m + 1] + self.col_base[m] - col_t[m] - self.col_base[m + 1];
            max = max.max(row_tile).max(col_tile);
        }
        // Diagonal [start, t)^2; row_t[k] = P(t, start), col_t[k] = P(start, t).
        let diag = self.loads.prefix(t, t) + self.row_base[k] - row_t[k] - col_t[k];
        max.max(diag)
    }
}

/// Probe for the furthest next cut `t > start` such that every tile formed by
/// `cuts` plus `t` has load at most `bound`.
///
/// Only the tiles touching the new interval are evaluated; their loads are
/// nondecreasing in `t`, so binary search applies.
pub fn beta<Q: PrefixLoad + ?Sized>(loads: &Q, cuts: &[usize], bound: u64) -> ProbeResult {
    let n = loads.dim();
    let start = *cuts.last().expect("cuts start with 0");
    debug_assert!(start < n);
    let frontier = Frontier::new(loads, cuts);
    let first = frontier.max_tile(start + 1);
    if first > bound {
        return ProbeResult {
            cut: start,
            feasible: false,
            max_load: first,
        };
    }
    let (mut lo, mut hi) = (start + 1, n);
    let mut lo_load = first;
    while lo < hi {
        let mid = lo + (hi - lo).div_ceil(2);
        let load = frontier.max_tile(mid);
        if load <= bound {
            lo = mid;
            lo_load = load;
        } else {
            hi = mid - 1;
        }
    }
    ProbeResult {
        cut: lo,
        feasible: true,
        max_load: lo_load,
    }
}

pub(crate) fn pal_limited<Q: PrefixLoad + ?Sized>(
    n: usize,
    bound: u64,
    loads: &Q,
    max_intervals: usize,
) -> Result<Option<PartitionVector>> {
    let mut cuts = vec![0usize];
    while *cuts.last().unwrap() != n {
        if cuts.len() > max_intervals {
            return Ok(None);
        }
        let probe = beta(loads, &cuts, bound);
        if !probe.feasible {
            let position = probe.cut;
            return Err(Error::InfeasibleLoad {
                bound,
                position,
                partial: cuts,
            });
        }
        cuts.push(probe.cut);
    }
    Ok(Some(PartitionVector::from_sorted_unchecked(cuts)))
}

/// Probe a load.
///
/// Greedily appends cuts, each placed as far as possible while keeping every
/// tile within `bound`. `loads` must be built from `a` (a
/// [`SparsePrefixSum`](crate::SparsePrefixSum) or a
/// [`DirectScan`](crate::DirectScan)).
pub fn pal<Q: PrefixLoad + ?Sized>(a: &SparseMatrix, bound: u64, loads: &Q) -> Result<PartitionVector> {
    if loads.dim() != a.n() {
        return Err(Error::InvalidMatrix(format!(
            "prefix structure has dimension {} but the matrix has n = {}",
            loads.dim(),
            a.n()
        )));
    }
    Ok(pal_limited(a.n(), bound, loads, usize::MAX)?.expect("unbounded"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::toy_matrix;
    use crate::metrics::tile_loads;
    use crate::sps::{DirectScan, SparsePrefixSum};

    #[test]
    fn large_bound_gives_single_interval() {
        let a = toy_matrix();
        let s = SparsePrefixSum::new(&a);
        assert_eq!(pal(&a, 14, &s).unwrap().cuts(), &[0, 6]);
        assert_eq!(pal(&a, 100, &s).unwrap().cuts(), &[0, 6]);
    }

    #[test]
    fn unit_bound_on_identity_cuts_everywhere() {
        let a = SparseMatrix::identity(7).unwrap();
        let s = SparsePrefixSum::new(&a);
        assert_eq!(pal(&a, 1, &s).unwrap().cuts(), &[0, 1, 2, 3, 4, 5, 6, 7]);
    }

    #[test]
    fn toy_bound_three() {
        let a = toy_matrix();
        let s = SparsePrefixSum::new(&a);
        let c = pal(&a, 3, &s).unwrap();
        assert!(tile_loads(&a, &c, &c).unwrap().max_load() <= 3);
        assert_eq!(c, pal(&a, 3, &DirectScan::new(&a)).unwrap());
    }

    #[test]
    fn infeasible_bound_reports_position() {
        let a = SparseMatrix::from_entries(4, vec![(0, 0, 1), (2, 2, 5)]).unwrap();
        let s = SparsePrefixSum::new(&a);
        match pal(&a, 4, &s) {
            Err(Error::InfeasibleLoad {
                bound: 4,
                position: 2,
                partial,
            }) => assert_eq!(partial, vec![0, 2]),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn probe_reports_frontier_load() {
        let a = toy_matrix();
        let s = SparsePrefixSum::new(&a);
        let r = beta(&s, &[0], 2);
        // Rows/cols [0, 3) hold 2; [0, 4) holds 4.
        assert_eq!(
            r,
            ProbeResult {
                cut: 3,
                feasible: true,
                max_load: 2
            }
        );
    }
}
