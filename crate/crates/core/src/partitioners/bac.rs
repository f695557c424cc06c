use super::MncSolver;
use crate::error::{Error, Result};
use crate::matrix::SparseMatrix;
use crate::partition::PartitionVector;

/// Bound a cut.
///
/// Binary searches the smallest integer load bound `B` in `[0, total]` for
/// which `mnc` needs at most `p` intervals, returns the `mnc` output for that
/// bound and pads it to exactly `p` intervals with [`pad_to`].
pub fn bac(a: &SparseMatrix, p: usize, mnc: MncSolver<'_>) -> Result<PartitionVector> {
    let n = a.n();
    if p == 0 || p > n {
        return Err(Error::Infeasible(format!(
            "cannot split {n} indices into {p} nonempty intervals"
        )));
    }
    let (mut lo, mut hi) = (0u64, a.total_weight());
    let mut best = None;
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        match mnc.run_limited(n, mid, p) {
            Ok(Some(cuts)) => {
                hi = mid;
                best = Some(cuts);
            }
            Ok(None) | Err(Error::InfeasibleLoad { .. }) => lo = mid + 1,
            Err(e) => return Err(e),
        }
    }
    // `best` holds the mnc output at the final `hi`, which equals `lo`.
    let cuts = match best {
        Some(c) => c,
        None => mnc
            .run_limited(n, lo, p)?
            .expect("a single interval always fits the total weight"),
    };
    Ok(pad_to(a, cuts, p))
}

/// Split the widest interval at its load median until `cuts` has `p`
/// intervals. Refining a symmetric partition never increases a tile load.
pub fn pad_to(a: &SparseMatrix, cuts: PartitionVector, p: usize) -> PartitionVector {
    let n = a.n();
    assert!(p <= n, "cannot pad to more intervals than indices");
    if cuts.intervals() >= p {
        return cuts;
    }
    let mut weight = a.row_sums();
    for (_, j, w) in a.entries() {
        weight[j] += w;
    }
    let mut cuts = cuts.into_cuts();
    while cuts.len() - 1 < p {
        let k = (0..cuts.len() - 1)
            .max_by_key(|&k| (cuts[k + 1] - cuts[k], std::cmp::Reverse(k)))
            .unwrap();
        let (s, e) = (cuts[k], cuts[k + 1]);
        let total: u64 = weight[s..e].iter().sum();
        let mut acc = 0u64;
        let mut split = s + 1;
        let mut best = u64::MAX;
        for t in s + 1..e {
            acc += weight[t - 1];
            let gap = (2 * acc).abs_diff(total);
            if gap < best {
                best = gap;
                split = t;
            }
        }
        cuts.insert(k + 1, split);
    }
    PartitionVector::from_sorted_unchecked(cuts)
}
