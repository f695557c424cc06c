//! Symmetric partitioners (RAC, BAC, PAL, OPAL, BAL), the uniform baseline and
//! Nicol's non-symmetric 2D baseline.
//!
//! `mLI` algorithms take an interval count `p` and minimize the load
//! imbalance; `mNC` algorithms take a load bound `Z` and minimize the number of
//! intervals. [`bac`] turns an `mNC` solver into an `mLI` one and [`bal`] does
//! the reverse.

mod bac;
mod bal;
mod nicol;
mod opal;
mod pal;
mod rac;

pub use bac::{bac, pad_to};
pub use bal::bal;
pub use nicol::{nicol2d, nicol2d_trace, NicolResult};
pub use opal::{opal, transform, TransformedEntry, TransformedMatrix};
pub use pal::{beta, pal, ProbeResult};
pub use rac::rac;

use crate::error::Result;
use crate::matrix::SparseMatrix;
use crate::partition::{uniform_partition, PartitionVector};
use crate::sps::PrefixLoad;

/// Default refinement iteration limit for RAC and Nicol's algorithm.
pub const DEFAULT_TAU: usize = 10;

/// An `mNC` algorithm: given a load bound, find few intervals.
#[derive(Clone, Copy)]
pub enum MncSolver<'a> {
    /// Probe-based search over a prefix-load structure built from the matrix.
    Pal(&'a dyn PrefixLoad),
    /// Single diagonal-major sweep over the transformed matrix.
    Opal(&'a TransformedMatrix),
}

impl std::fmt::Debug for MncSolver<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MncSolver::Pal(_) => f.write_str("Pal"),
            MncSolver::Opal(_) => f.write_str("Opal"),
        }
    }
}

impl MncSolver<'_> {
    /// Runs the solver, giving up with `Ok(None)` once more than
    /// `max_intervals` intervals would be needed.
    pub(crate) fn run_limited(&self, n: usize, bound: u64, max_intervals: usize) -> Result<Option<PartitionVector>> {
        match self {
            MncSolver::Pal(loads) => pal::pal_limited(n, bound, *loads, max_intervals),
            MncSolver::Opal(t) => opal::opal_limited(t, bound, max_intervals),
        }
    }

    pub fn run(&self, n: usize, bound: u64) -> Result<PartitionVector> {
        Ok(self
            .run_limited(n, bound, usize::MAX)?
            .expect("unbounded run always completes"))
    }
}

/// An `mLI` algorithm: given an interval count, minimize the imbalance.
#[derive(Debug, Clone, Copy)]
pub enum MliSolver<'a> {
    Uniform,
    Rac { tau: usize },
    Bac(MncSolver<'a>),
}

impl MliSolver<'_> {
    pub fn run(&self, a: &SparseMatrix, p: usize) -> Result<PartitionVector> {
        match self {
            MliSolver::Uniform => uniform_partition(a.n(), p),
            MliSolver::Rac { tau } => rac(a, p, *tau),
            MliSolver::Bac(mnc) => bac(a, p, *mnc),
        }
    }
}

/// Maximum tile load of the symmetric partition `cuts`.
pub(crate) fn symmetric_lmax(a: &SparseMatrix, cuts: &PartitionVector) -> u64 {
    crate::metrics::tile_loads(a, cuts, cuts)
        .expect("cuts match the matrix")
        .max_load()
}
