use std::time::Instant;

use anyhow::Result;
use symrect::io::{PartitionReport, SparsifyRecord, Target};
use symrect::oracle::{optimal_mli, optimal_mnc, OracleLimits};
use symrect::{PartitionVector, SparseMatrix};

use crate::algorithm::{run, Algorithm, RunOptions, Sampling};

fn ms(d: std::time::Duration) -> f64 {
    d.as_secs_f64() * 1e3
}

fn sparsify_record(opts: &RunOptions, factor: f64) -> SparsifyRecord {
    let (mode, eps) = match opts.sampling {
        Sampling::Off => return SparsifyRecord::off(),
        Sampling::Factor(_) => ("factor", None),
        Sampling::Tolerance(e) => ("tolerance", Some(e)),
    };
    SparsifyRecord {
        mode: mode.into(),
        factor,
        eps,
        seed: opts.seed,
    }
}

/// Partitions `a` and reports metrics measured on `a` itself, even when the
/// algorithm ran on a sample.
pub fn cmd_partition(
    matrix: &str,
    a: &SparseMatrix,
    alg: Algorithm,
    target: Target,
    opts: &RunOptions,
    with_tiles: bool,
) -> Result<PartitionReport> {
    let out = run(a, alg, target, opts)?;
    let report = PartitionReport::build(
        matrix,
        alg.name(),
        target,
        a,
        &out.rows,
        out.cols.as_ref(),
        ms(out.elapsed),
        sparsify_record(opts, out.factor),
        with_tiles,
    )?;
    Ok(report)
}

/// Metrics of the given cut vectors. `col_cuts = None` applies `cuts` to
/// both dimensions.
pub fn cmd_evaluate(
    matrix: &str,
    a: &SparseMatrix,
    cuts: &[usize],
    col_cuts: Option<&[usize]>,
    with_tiles: bool,
) -> Result<PartitionReport> {
    let start = Instant::now();
    let rows = PartitionVector::new(cuts.to_vec(), a.n())?;
    let cols = col_cuts.map(|c| PartitionVector::new(c.to_vec(), a.n())).transpose()?;
    let mut report = PartitionReport::build(
        matrix,
        "evaluate",
        Target::P(rows.intervals()),
        a,
        &rows,
        cols.as_ref(),
        0.0,
        SparsifyRecord::off(),
        with_tiles,
    )?;
    report.runtime_ms = ms(start.elapsed());
    Ok(report)
}

/// Exhaustive optimum: minimum imbalance for `--p`, minimum interval count
/// for `--load`.
pub fn cmd_oracle(
    matrix: &str,
    a: &SparseMatrix,
    target: Target,
    limits: &OracleLimits,
    with_tiles: bool,
) -> Result<PartitionReport> {
    let start = Instant::now();
    let cuts = match target {
        Target::P(p) => optimal_mli(a, p, limits)?.0,
        Target::Load(z) => optimal_mnc(a, z, limits)?,
    };
    let elapsed = ms(start.elapsed());
    let report = PartitionReport::build(
        matrix,
        "oracle",
        target,
        a,
        &cuts,
        None,
        elapsed,
        SparsifyRecord::off(),
        with_tiles,
    )?;
    Ok(report)
}
