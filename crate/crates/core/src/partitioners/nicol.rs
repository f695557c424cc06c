use crate::error::{Error, Result};
use crate::matrix::SparseMatrix;
use crate::metrics::tile_loads;
use crate::onedim::refinement;
use crate::partition::{uniform_partition, PartitionVector};

/// Row and column cuts of a non-symmetric rectilinear partition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NicolResult {
    pub rows: PartitionVector,
    pub cols: PartitionVector,
}

/// Nicol's rectilinear 2D partitioning into `p x q` tiles.
///
/// Starting from uniform column cuts, alternately computes the optimal row
/// cuts for the current columns and the optimal column cuts for the current
/// rows, until neither changes or `tau` rounds elapse.
pub fn nicol2d(a: &SparseMatrix, p: usize, q: usize, tau: usize) -> Result<NicolResult> {
    nicol2d_trace(a, p, q, tau).map(|(r, _)| r)
}

/// [`nicol2d`] that also returns the maximum tile load after every half step.
pub fn nicol2d_trace(a: &SparseMatrix, p: usize, q: usize, tau: usize) -> Result<(NicolResult, Vec<u64>)> {
    let n = a.n();
    if p == 0 || q == 0 || p > n || q > n {
        return Err(Error::Infeasible(format!(
            "cannot split {n} indices into {p} x {q} nonempty intervals"
        )));
    }
    let transposed = a.transpose();
    let lmax =
        |rows: &PartitionVector, cols: &PartitionVector| tile_loads(a, rows, cols).expect("cuts match").max_load();
    let mut trace = Vec::new();
    let mut cols = uniform_partition(n, q)?;
    let mut rows = refinement(a, &cols, p)?;
    trace.push(lmax(&rows, &cols));
    for _ in 0..tau.max(1) {
        let next_cols = refinement(&transposed, &rows, q)?;
        trace.push(lmax(&rows, &next_cols));
        let next_rows = refinement(a, &next_cols, p)?;
        trace.push(lmax(&next_rows, &next_cols));
        let settled = next_cols == cols && next_rows == rows;
        cols = next_cols;
        rows = next_rows;
        if settled {
            break;
        }
    }
    Ok((NicolResult { rows, cols }, trace))
}
