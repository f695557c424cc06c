//! Library side of the `symrect` command-line tool: algorithm dispatch,
//! single-run commands, benchmark sweeps and performance profiles.

use std::fmt;

pub mod algorithm;
pub mod bench;
pub mod commands;
pub mod profile;

pub use algorithm::{check_pair, planned_factor, run, Algorithm, RunOptions, RunOutcome, Sampling};
pub use bench::{cmd_bench, read_bench_csv, write_bench_csv, BenchConfig, BenchRow, LoadGrid, Objectives};
pub use commands::{cmd_evaluate, cmd_oracle, cmd_partition};
pub use profile::{cmd_profile, profile_svg, write_profile_csv, Metric, ProfileCurve};

/// Invalid combination of command-line arguments (exit code 2).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}
