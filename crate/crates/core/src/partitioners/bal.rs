use super::{symmetric_lmax, MliSolver};
use crate::error::{Error, Result};
use crate::matrix::SparseMatrix;
use crate::partition::PartitionVector;
use crate::sparsify::mnc_p_hint;

/// Bound a load.
///
/// Binary searches the interval count `p` for the smallest value whose `mli`
/// output keeps every tile within `bound`. For unit-weight matrices the search
/// starts on `[1, ceil(n / ceil(sqrt(bound)))]` and only widens to `[1, n]` if
/// that range holds no feasible count.
pub fn bal(a: &SparseMatrix, bound: u64, mli: MliSolver<'_>) -> Result<PartitionVector> {
    let n = a.n();
    if bound == 0 && a.total_weight() > 0 {
        return Err(Error::Infeasible("load bound 0 on a nonempty matrix".into()));
    }
    if bound < a.max_weight() {
        return Err(Error::Infeasible(format!(
            "an entry of weight {} exceeds the load bound {bound}",
            a.max_weight()
        )));
    }
    let upper = if a.is_unit_weight() && bound > 0 {
        mnc_p_hint(n, bound).min(n)
    } else {
        n
    };
    let fits = |p: usize| -> Result<Option<PartitionVector>> {
        let cuts = mli.run(a, p)?;
        Ok((symmetric_lmax(a, &cuts) <= bound).then_some(cuts))
    };
    if let Some(found) = search(1, upper, &fits)? {
        return Ok(found);
    }
    if upper < n {
        if let Some(found) = search(upper + 1, n, &fits)? {
            return Ok(found);
        }
    }
    Err(Error::Infeasible(format!(
        "no interval count up to {n} keeps every tile within {bound}"
    )))
}

/// Smallest `p` in `[lo, hi]` accepted by `fits`, assuming acceptance is
/// monotone; `None` when even `hi` is rejected.
fn search<F>(mut lo: usize, mut hi: usize, fits: &F) -> Result<Option<PartitionVector>>
where
    F: Fn(usize) -> Result<Option<PartitionVector>>,
{
    let Some(mut best) = fits(hi)? else {
        return Ok(None);
    };
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        match fits(mid)? {
            Some(cuts) => {
                hi = mid;
                best = cuts;
            }
            None => lo = mid + 1,
        }
    }
    Ok(Some(best))
}
