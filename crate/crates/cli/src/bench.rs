//! Benchmark sweeps over matrices, algorithms, objectives and seeds.
//!
//! CSV columns: `matrix, algorithm, p, Z, s, eps, seed, imbalance, lmax,
//! runtime_ms`. For interval-count algorithms `p` is the requested count and
//! `Z` is empty; for load-bound algorithms `Z` is the requested bound and `p`
//! the count found. `s` is the keep probability selected by the sampling
//! options. A failed run leaves `imbalance`, `lmax` and `runtime_ms` empty.

use std::io::{Read, Write};

use anyhow::{Context, Result};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use symrect::io::Target;
use symrect::{load_imbalance, tile_loads, SparseMatrix};

use crate::algorithm::{planned_factor, run, Algorithm, RunOptions};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub matrix: String,
    pub algorithm: String,
    pub p: Option<usize>,
    #[serde(rename = "Z")]
    pub z: Option<u64>,
    pub s: Option<f64>,
    pub eps: Option<f64>,
    pub seed: u64,
    pub imbalance: Option<f64>,
    pub lmax: Option<u64>,
    pub runtime_ms: Option<f64>,
}

impl BenchRow {
    pub fn failed(&self) -> bool {
        self.imbalance.is_none()
    }
}

/// Load bounds for the load-driven algorithms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LoadGrid {
    Absolute(Vec<u64>),
    /// `Z = floor(total / d)` for each divisor `d`.
    Divisors(Vec<u64>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Objectives {
    pub counts: Vec<usize>,
    pub loads: LoadGrid,
}

impl Default for Objectives {
    fn default() -> Self {
        Self {
            counts: vec![4, 8, 16, 32],
            loads: LoadGrid::Divisors(vec![4, 9, 16, 25]),
        }
    }
}

impl Objectives {
    fn targets(&self, alg: Algorithm, a: &SparseMatrix) -> Vec<Target> {
        if alg.takes_count() {
            return self.counts.iter().map(|&p| Target::P(p)).collect();
        }
        let total = a.total_weight();
        match &self.loads {
            LoadGrid::Absolute(zs) => zs.iter().map(|&z| Target::Load(z)).collect(),
            LoadGrid::Divisors(ds) => ds.iter().map(|&d| Target::Load(total / d.max(1))).collect(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub algorithms: Vec<Algorithm>,
    pub objectives: Objectives,
    pub seeds: Vec<u64>,
    pub repetitions: usize,
    /// Seed is overwritten per instance.
    pub run: RunOptions,
    pub threads: usize,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            algorithms: Algorithm::ALL.to_vec(),
            objectives: Objectives::default(),
            seeds: vec![0],
            repetitions: 10,
            run: RunOptions::default(),
            threads: 1,
        }
    }
}

/// Median; the mean of the two middle values for even lengths.
pub fn median(values: &mut [f64]) -> f64 {
    assert!(!values.is_empty(), "median of nothing");
    values.sort_by(f64::total_cmp);
    let k = values.len() / 2;
    if values.len() % 2 == 1 {
        values[k]
    } else {
        (values[k - 1] + values[k]) / 2.0
    }
}

struct Instance<'a> {
    name: &'a str,
    a: &'a SparseMatrix,
    alg: Algorithm,
    target: Target,
    seed: u64,
}

fn ratio_f64(r: &symrect::Imbalance) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

fn measure(inst: &Instance<'_>, cfg: &BenchConfig) -> BenchRow {
    let opts = RunOptions {
        seed: inst.seed,
        ..cfg.run
    };
    let (p, z) = match inst.target {
        Target::P(p) => (Some(p), None),
        Target::Load(z) => (None, Some(z)),
    };
    let mut row = BenchRow {
        matrix: inst.name.to_string(),
        algorithm: inst.alg.name().to_string(),
        p,
        z,
        s: Some(planned_factor(inst.a, inst.target, opts.sampling)),
        eps: opts.sampling.eps(),
        seed: inst.seed,
        imbalance: None,
        lmax: None,
        runtime_ms: None,
    };
    let mut times = Vec::with_capacity(cfg.repetitions.max(1));
    let mut first = None;
    for _ in 0..cfg.repetitions.max(1) {
        match run(inst.a, inst.alg, inst.target, &opts) {
            Ok(out) => {
                times.push(out.elapsed.as_secs_f64() * 1e3);
                first.get_or_insert(out);
            }
            Err(e) => {
                log::warn!("{} {} {:?} seed {}: {e:#}", inst.name, inst.alg, inst.target, inst.seed);
                return row;
            }
        }
    }
    let out = first.expect("at least one repetition");
    let metrics = tile_loads(inst.a, &out.rows, out.cols.as_ref().unwrap_or(&out.rows))
        .and_then(|g| Ok((g.max_load(), load_imbalance(&g)?)));
    match metrics {
        Ok((lmax, lambda)) => {
            if z.is_some() {
                row.p = Some(out.rows.intervals());
            }
            row.imbalance = Some(ratio_f64(&lambda));
            row.lmax = Some(lmax);
            row.runtime_ms = Some(median(&mut times));
        }
        Err(e) => log::warn!("{} {}: {e}", inst.name, inst.alg),
    }
    row
}

fn sort_key(row: &BenchRow) -> (String, String, u8, u64, u64) {
    let (kind, value) = match (row.z, row.p) {
        (Some(z), _) => (1, z),
        (None, p) => (0, p.unwrap_or(0) as u64),
    };
    (row.matrix.clone(), row.algorithm.clone(), kind, value, row.seed)
}

/// Runs every (matrix, algorithm, objective, seed) combination and returns
/// one row each, sorted by matrix, algorithm, objective and seed.
pub fn cmd_bench(matrices: &[(String, SparseMatrix)], cfg: &BenchConfig) -> Result<Vec<BenchRow>> {
    let mut instances = Vec::new();
    for (name, a) in matrices {
        for &alg in &cfg.algorithms {
            for target in cfg.objectives.targets(alg, a) {
                for &seed in &cfg.seeds {
                    instances.push(Instance {
                        name,
                        a,
                        alg,
                        target,
                        seed,
                    });
                }
            }
        }
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.threads.max(1))
        .build()
        .context("building the worker pool")?;
    let mut rows: Vec<BenchRow> = pool.install(|| instances.par_iter().map(|i| measure(i, cfg)).collect());
    rows.sort_by_cached_key(sort_key);
    Ok(rows)
}

pub fn write_bench_csv<W: Write>(writer: W, rows: &[BenchRow]) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_bench_csv<R: Read>(reader: R) -> Result<Vec<BenchRow>> {
    let mut r = csv::Reader::from_reader(reader);
    let mut rows = Vec::new();
    for (i, rec) in r.deserialize().enumerate() {
        rows.push(rec.with_context(|| format!("bench CSV record {}", i + 1))?);
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use symrect::gen::{rmat, toy_matrix};

    fn two_matrices() -> Vec<(String, SparseMatrix)> {
        vec![("r1".into(), rmat(7, 600, 1)), ("r2".into(), rmat(7, 800, 2))]
    }

    #[test]
    fn medians() {
        assert_eq!(median(&mut [3.0, 1.0, 2.0]), 2.0);
        assert_eq!(median(&mut [4.0, 1.0, 3.0, 2.0]), 2.5);
        let mut ten: Vec<f64> = (1..=10).rev().map(f64::from).collect();
        assert_eq!(median(&mut ten), 5.5);
    }

    #[test]
    fn cardinality() {
        let cfg = BenchConfig {
            algorithms: vec![Algorithm::Rac, Algorithm::BacPal],
            objectives: Objectives {
                counts: vec![4, 8],
                ..Objectives::default()
            },
            repetitions: 2,
            ..BenchConfig::default()
        };
        let rows = cmd_bench(&two_matrices(), &cfg).unwrap();
        assert_eq!(rows.len(), 8);
        assert!(rows.iter().all(|r| !r.failed() && r.z.is_none()));
    }

    #[test]
    fn deterministic_apart_from_runtime() {
        let cfg = BenchConfig {
            algorithms: vec![Algorithm::Pal, Algorithm::BacOpal],
            objectives: Objectives {
                counts: vec![4],
                loads: LoadGrid::Divisors(vec![9]),
            },
            seeds: vec![1, 2],
            repetitions: 1,
            run: RunOptions {
                sampling: crate::Sampling::Factor(0.5),
                ..RunOptions::default()
            },
            threads: 3,
        };
        let strip = |mut rows: Vec<BenchRow>| {
            rows.iter_mut().for_each(|r| r.runtime_ms = None);
            rows
        };
        let x = strip(cmd_bench(&two_matrices(), &cfg).unwrap());
        let y = strip(
            cmd_bench(
                &two_matrices(),
                &BenchConfig {
                    threads: 1,
                    ..cfg.clone()
                },
            )
            .unwrap(),
        );
        assert_eq!(x, y);
        assert_eq!(x.len(), 8);
    }

    #[test]
    fn failures_become_sentinel_rows() {
        let cfg = BenchConfig {
            algorithms: vec![Algorithm::Pal],
            objectives: Objectives {
                counts: vec![],
                loads: LoadGrid::Absolute(vec![0, 4]),
            },
            repetitions: 1,
            ..BenchConfig::default()
        };
        let rows = cmd_bench(&[("toy".into(), toy_matrix())], &cfg).unwrap();
        assert_eq!(rows.len(), 2);
        assert!(rows[0].failed() && rows[0].lmax.is_none() && rows[0].runtime_ms.is_none());
        assert!(!rows[1].failed());
        assert!(rows[1].lmax.unwrap() <= 4);
    }

    #[test]
    fn csv_round_trip() {
        let cfg = BenchConfig {
            algorithms: vec![Algorithm::Uni, Algorithm::BalUni],
            objectives: Objectives {
                counts: vec![2, 3],
                loads: LoadGrid::Absolute(vec![0, 5]),
            },
            repetitions: 1,
            ..BenchConfig::default()
        };
        let rows = cmd_bench(&[("toy".into(), toy_matrix())], &cfg).unwrap();
        let mut buf = Vec::new();
        write_bench_csv(&mut buf, &rows).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("matrix,algorithm,p,Z,s,eps,seed,imbalance,lmax,runtime_ms\n"));
        assert_eq!(read_bench_csv(buf.as_slice()).unwrap(), rows);
    }
}
