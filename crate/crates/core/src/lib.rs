//! Symmetric rectilinear partitioning of square sparse matrices.
//!
//! A symmetric rectilinear partition applies one cut vector to both the rows
//! and the columns of a square matrix, producing a `p x p` grid of tiles whose
//! diagonal tiles are squares. The crate provides:
//!
//! - [`SparseMatrix`], [`PartitionVector`] and the tile-load metrics in [`metrics`].
//! - [`SparsePrefixSum`], a persistent binary indexed tree answering rectangle
//!   load queries in `O(log^2 n)`.
//! - Optimal one-dimensional bottleneck partitioning and the 2D refinement kernel
//!   in [`onedim`].
//! - The partitioners in [`partitioners`]: uniform, RAC, BAC, PAL, OPAL, BAL and
//!   Nicol's non-symmetric 2D baseline.
//! - Randomized sparsification in [`sparsify`].
//! - An exhaustive-search optimum and the vertex-cover reduction in [`oracle`].
//! - Matrix Market ingestion and report serialization in [`io`].

pub mod error;
pub mod gen;
pub mod io;
pub mod matrix;
pub mod metrics;
pub mod onedim;
pub mod oracle;
pub mod partition;
pub mod partitioners;
pub mod sparsify;
pub mod sps;

pub use crate::error::{Error, Result};
pub use crate::matrix::SparseMatrix;
pub use crate::metrics::{format_decimal, leading_imbalance, load_imbalance, tile_loads, Imbalance, TileLoadGrid};
pub use crate::partition::{uniform_partition, PartitionVector};
pub use crate::sps::{DirectScan, PrefixLoad, SparsePrefixSum};
