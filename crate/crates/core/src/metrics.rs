//! Tile loads and load-imbalance metrics.

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::matrix::SparseMatrix;
use crate::partition::PartitionVector;

/// Exact load imbalance `Lmax / Lavg` as a reduced ratio of integers.
pub type Imbalance = Ratio<u128>;

/// Loads of the `p x q` tiles induced by a row and a column partition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TileLoadGrid {
    rows: PartitionVector,
    cols: PartitionVector,
    loads: Vec<u64>,
}

impl TileLoadGrid {
    pub fn row_cuts(&self) -> &PartitionVector {
        &self.rows
    }

    pub fn col_cuts(&self) -> &PartitionVector {
        &self.cols
    }

    /// Number of row intervals (`p`).
    pub fn p(&self) -> usize {
        self.rows.intervals()
    }

    /// Number of column intervals (`q`).
    pub fn q(&self) -> usize {
        self.cols.intervals()
    }

    pub fn load(&self, i: usize, j: usize) -> u64 {
        self.loads[i * self.q() + j]
    }

    /// Loads in row-major tile order.
    pub fn loads(&self) -> &[u64] {
        &self.loads
    }

    pub fn to_rows(&self) -> Vec<Vec<u64>> {
        self.loads.chunks(self.q()).map(<[u64]>::to_vec).collect()
    }

    pub fn total(&self) -> u64 {
        self.loads.iter().sum()
    }

    pub fn max_load(&self) -> u64 {
        self.loads.iter().copied().max().unwrap_or(0)
    }

    /// Average tile load `total / (p * q)`.
    pub fn avg_load(&self) -> Ratio<u128> {
        Ratio::new(self.total() as u128, (self.p() * self.q()) as u128)
    }
}

/// Computes every tile load in one pass over the entries.
pub fn tile_loads(a: &SparseMatrix, row_cuts: &PartitionVector, col_cuts: &PartitionVector) -> Result<TileLoadGrid> {
    row_cuts.check_dimension(a.n())?;
    col_cuts.check_dimension(a.n())?;
    let q = col_cuts.intervals();
    let mut loads = vec![0u64; row_cuts.intervals() * q];
    for ri in 0..row_cuts.intervals() {
        let base = ri * q;
        for i in row_cuts.interval(ri) {
            for (j, w) in a.row(i) {
                loads[base + col_cuts.locate(j)] += w;
            }
        }
    }
    Ok(TileLoadGrid {
        rows: row_cuts.clone(),
        cols: col_cuts.clone(),
        loads,
    })
}

fn ratio_of(max: u64, tiles: usize, total: u64) -> Result<Imbalance> {
    if total == 0 {
        return Err(Error::UndefinedImbalance);
    }
    Ok(Ratio::new(max as u128 * tiles as u128, total as u128))
}

/// `Lmax / Lavg` of a tile grid, averaging over all `p * q` tiles.
pub fn load_imbalance(grid: &TileLoadGrid) -> Result<Imbalance> {
    ratio_of(grid.max_load(), grid.p() * grid.q(), grid.total())
}

/// Maximum load and imbalance restricted to the leading tiles `T(i, j)` with
/// `i, j <= k` under the symmetric partition `cuts`.
///
/// The imbalance is `None` when those tiles carry no load.
pub fn leading_imbalance(a: &SparseMatrix, cuts: &PartitionVector, k: usize) -> Result<(u64, Option<Imbalance>)> {
    cuts.check_dimension(a.n())?;
    if k >= cuts.intervals() {
        return Err(Error::InvalidPartition(format!(
            "interval index {k} out of range for {} intervals",
            cuts.intervals()
        )));
    }
    let bound = cuts.cuts()[k + 1];
    let mut loads = vec![0u64; (k + 1) * (k + 1)];
    for i in 0..bound {
        let ri = cuts.locate(i);
        for (j, w) in a.row(i) {
            if j >= bound {
                break;
            }
            loads[ri * (k + 1) + cuts.locate(j)] += w;
        }
    }
    let max = loads.iter().copied().max().unwrap_or(0);
    let total: u64 = loads.iter().sum();
    let imbalance = ratio_of(max, loads.len(), total).ok();
    Ok((max, imbalance))
}

/// Renders a ratio as a decimal with `places` fractional digits, rounding
/// half away from zero.
pub fn format_decimal(value: &Ratio<u128>, places: u32) -> String {
    let scale = 10u128.pow(places);
    let scaled = (value.numer() * scale * 2 + value.denom()) / (value.denom() * 2);
    let int = scaled / scale;
    if places == 0 {
        return int.to_string();
    }
    let frac = scaled % scale;
    format!("{int}.{frac:0width$}", width = places as usize)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::toy_matrix;

    fn pv(cuts: &[usize], n: usize) -> PartitionVector {
        PartitionVector::new(cuts.to_vec(), n).unwrap()
    }

    #[test]
    fn toy_symmetric_grid() {
        let a = toy_matrix();
        let c = pv(&[0, 3, 5, 6], 6);
        let grid = tile_loads(&a, &c, &c).unwrap();
        assert_eq!(grid.total(), 14);
        assert_eq!(grid.max_load(), 3);
        let lambda = load_imbalance(&grid).unwrap();
        assert_eq!(lambda, Ratio::new(27, 14));
        assert_eq!(format_decimal(&lambda, 4), "1.9286");
        assert_eq!(grid.avg_load(), Ratio::new(14, 9));
    }

    #[test]
    fn toy_non_symmetric_grid() {
        let a = toy_matrix();
        let grid = tile_loads(&a, &pv(&[0, 1, 4, 6], 6), &pv(&[0, 3, 5, 6], 6)).unwrap();
        assert_eq!(grid.max_load(), 3);
        assert_eq!(load_imbalance(&grid).unwrap(), Ratio::new(27, 14));
    }

    #[test]
    fn identity_grid() {
        let a = SparseMatrix::identity(4).unwrap();
        let c = pv(&[0, 2, 4], 4);
        let grid = tile_loads(&a, &c, &c).unwrap();
        assert_eq!(grid.to_rows(), vec![vec![2, 0], vec![0, 2]]);
        assert_eq!(load_imbalance(&grid).unwrap(), Ratio::from_integer(2));
    }

    #[test]
    fn single_tile_is_balanced() {
        let a = toy_matrix();
        let c = PartitionVector::single(6);
        let grid = tile_loads(&a, &c, &c).unwrap();
        assert_eq!(load_imbalance(&grid).unwrap(), Ratio::from_integer(1));
    }

    #[test]
    fn wrong_dimension_is_rejected() {
        let a = toy_matrix();
        let c = pv(&[0, 2, 5], 5);
        assert!(matches!(tile_loads(&a, &c, &c), Err(Error::InvalidPartition(_))));
    }

    #[test]
    fn empty_matrix_has_undefined_imbalance() {
        let a = SparseMatrix::empty(3).unwrap();
        let c = PartitionVector::single(3);
        let grid = tile_loads(&a, &c, &c).unwrap();
        assert!(matches!(load_imbalance(&grid), Err(Error::UndefinedImbalance)));
    }

    #[test]
    fn leading_tiles() {
        let a = toy_matrix();
        let c = pv(&[0, 3, 5, 6], 6);
        let full = load_imbalance(&tile_loads(&a, &c, &c).unwrap()).unwrap();
        assert_eq!(leading_imbalance(&a, &c, 2).unwrap(), (3, Some(full)));
        // T(0,0) covers rows/cols 0..3: entries (1,2) and (2,1).
        assert_eq!(leading_imbalance(&a, &c, 0).unwrap(), (2, Some(Ratio::from_integer(1))));
        assert!(leading_imbalance(&a, &c, 3).is_err());
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(format_decimal(&Ratio::new(27, 14), 4), "1.9286");
        assert_eq!(format_decimal(&Ratio::from_integer(2), 4), "2.0000");
        assert_eq!(format_decimal(&Ratio::new(1, 3), 2), "0.33");
        assert_eq!(format_decimal(&Ratio::new(5, 2), 0), "3");
    }
}
