use super::symmetric_lmax;
use crate::error::{Error, Result};
use crate::matrix::SparseMatrix;
use crate::onedim::refinement;
use crate::partition::PartitionVector;

/// Refine a cut.
///
/// Refines the rows of `A` and of `A^T` from the single-interval column
/// partition, keeps the direction with the lower imbalance and then applies
/// `tau` further refinements in that direction, stopping early once the cut
/// vector stops changing. There is no convergence guarantee.
pub fn rac(a: &SparseMatrix, p: usize, tau: usize) -> Result<PartitionVector> {
    let n = a.n();
    if p == 0 || p > n {
        return Err(Error::Infeasible(format!(
            "cannot split {n} indices into {p} nonempty intervals"
        )));
    }
    let initial = PartitionVector::single(n);
    let transposed = a.transpose();
    let by_rows = refinement(a, &initial, p)?;
    let by_cols = refinement(&transposed, &initial, p)?;

    // Both candidates have p^2 tiles over the same total, so comparing the
    // imbalance reduces to comparing the maximum tile load.
    let (mut cuts, work) = if symmetric_lmax(a, &by_rows) < symmetric_lmax(a, &by_cols) {
        (by_rows, a)
    } else {
        (by_cols, &transposed)
    };
    for _ in 0..tau {
        let next = refinement(work, &cuts, p)?;
        if next == cuts {
            break;
        }
        cuts = next;
    }
    Ok(cuts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::toy_matrix;
    use crate::uniform_partition;

    #[test]
    fn diagonal_gives_uniform_cuts() {
        for (n, p) in [(8, 2), (12, 3), (12, 4), (16, 4), (9, 9)] {
            let a = SparseMatrix::identity(n).unwrap();
            let c = rac(&a, p, 10).unwrap();
            assert_eq!(c, uniform_partition(n, p).unwrap(), "n = {n}, p = {p}");
        }
    }

    #[test]
    fn toy_output_is_valid() {
        let c = rac(&toy_matrix(), 3, 10).unwrap();
        assert_eq!(c.intervals(), 3);
        assert_eq!(c.n(), 6);
    }

    #[test]
    fn degenerate_and_infeasible() {
        let a = SparseMatrix::from_pattern(1, vec![(0, 0)]).unwrap();
        assert_eq!(rac(&a, 1, 10).unwrap().cuts(), &[0, 1]);
        assert!(matches!(rac(&a, 2, 10), Err(Error::Infeasible(_))));
    }
}
