use std::path::Path;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::SparseMatrix;
use crate::metrics::{format_decimal, load_imbalance, tile_loads, Imbalance};
use crate::partition::PartitionVector;
use crate::sparsify::{SparsifyConfig, SparsifyMode};

/// Schema tag written at the top of every report.
pub const REPORT_SCHEMA: &str = "symrect-report/1";

/// Requested objective: an interval count or a load bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Target {
    P(usize),
    Load(u64),
}

/// How the matrix was sampled before partitioning.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SparsifyRecord {
    /// `off`, `factor` or `tolerance`.
    pub mode: String,
    /// Keep probability actually used (1 when off).
    pub factor: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eps: Option<f64>,
    pub seed: u64,
}

impl SparsifyRecord {
    pub fn off() -> Self {
        Self {
            mode: "off".into(),
            factor: 1.0,
            eps: None,
            seed: 0,
        }
    }

    pub fn from_config(cfg: &SparsifyConfig, factor: f64) -> Self {
        let (mode, eps) = match cfg.mode {
            SparsifyMode::Off => return Self::off(),
            SparsifyMode::Factor { .. } => ("factor", None),
            SparsifyMode::Tolerance { eps } => ("tolerance", Some(eps)),
        };
        Self {
            mode: mode.into(),
            factor,
            eps,
            seed: cfg.seed,
        }
    }
}

/// Result of one partitioning or evaluation run, written as TOML.
///
/// Metrics always refer to the original (unsampled) matrix. `lavg` and
/// `imbalance_ratio` are exact fractions such as `"7/3"`; `imbalance` is the
/// same value rounded to four decimals.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PartitionReport {
    pub schema: String,
    pub matrix: String,
    pub algorithm: String,
    pub target: Target,
    pub cuts: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub col_cuts: Option<Vec<usize>>,
    pub lmax: u64,
    pub lavg: String,
    pub imbalance: String,
    pub imbalance_ratio: String,
    pub runtime_ms: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tiles: Option<Vec<Vec<u64>>>,
    pub sparsify: SparsifyRecord,
}

fn ratio_string(r: &Ratio<u128>) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn parse_ratio(s: &str) -> Result<Ratio<u128>> {
    let bad = || Error::Report(format!("malformed ratio '{s}'"));
    let (n, d) = s.split_once('/').ok_or_else(bad)?;
    let n: u128 = n.trim().parse().map_err(|_| bad())?;
    let d: u128 = d.trim().parse().map_err(|_| bad())?;
    if d == 0 {
        return Err(bad());
    }
    Ok(Ratio::new(n, d))
}

impl PartitionReport {
    /// Computes the metrics of `rows x cols` (`cols = None` means symmetric)
    /// on `a`.
    #[allow(clippy::too_many_arguments)]
    pub fn build(
        matrix: impl Into<String>,
        algorithm: impl Into<String>,
        target: Target,
        a: &SparseMatrix,
        rows: &PartitionVector,
        cols: Option<&PartitionVector>,
        runtime_ms: f64,
        sparsify: SparsifyRecord,
        with_tiles: bool,
    ) -> Result<Self> {
        let grid = tile_loads(a, rows, cols.unwrap_or(rows))?;
        let lambda: Imbalance = load_imbalance(&grid)?;
        Ok(Self {
            schema: REPORT_SCHEMA.into(),
            matrix: matrix.into(),
            algorithm: algorithm.into(),
            target,
            cuts: rows.cuts().to_vec(),
            col_cuts: cols.map(|c| c.cuts().to_vec()),
            lmax: grid.max_load(),
            lavg: ratio_string(&grid.avg_load()),
            imbalance: format_decimal(&lambda, 4),
            imbalance_ratio: ratio_string(&lambda),
            runtime_ms,
            tiles: with_tiles.then(|| grid.to_rows()),
            sparsify,
        })
    }

    /// Exact load imbalance.
    pub fn imbalance_exact(&self) -> Result<Imbalance> {
        parse_ratio(&self.imbalance_ratio)
    }

    /// Checks the schema tag, the cut vectors and `imbalance = lmax / lavg`.
    pub fn validate(&self) -> Result<()> {
        if self.schema != REPORT_SCHEMA {
            return Err(Error::Report(format!(
                "schema '{}' does not match '{REPORT_SCHEMA}'",
                self.schema
            )));
        }
        let n = *self.cuts.last().unwrap_or(&0);
        PartitionVector::new(self.cuts.clone(), n)?;
        if let Some(cols) = &self.col_cuts {
            PartitionVector::new(cols.clone(), n)?;
        }
        let lavg = parse_ratio(&self.lavg)?;
        let lambda = self.imbalance_exact()?;
        if lavg == Ratio::from_integer(0) || Ratio::from_integer(self.lmax as u128) / lavg != lambda {
            return Err(Error::Report(format!(
                "imbalance {} is not lmax / lavg = {} / {}",
                self.imbalance_ratio, self.lmax, self.lavg
            )));
        }
        if format_decimal(&lambda, 4) != self.imbalance {
            return Err(Error::Report(format!(
                "decimal imbalance {} does not match {}",
                self.imbalance, self.imbalance_ratio
            )));
        }
        Ok(())
    }

    pub fn to_toml(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Report(e.to_string()))
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        let report: Self = toml::from_str(text).map_err(|e| Error::Report(e.to_string()))?;
        report.validate()?;
        Ok(report)
    }
}

pub fn write_report(report: &PartitionReport, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, report.to_toml()?)?;
    Ok(())
}

pub fn read_report(path: impl AsRef<Path>) -> Result<PartitionReport> {
    PartitionReport::from_toml(&std::fs::read_to_string(path)?)
}
