//! Performance profiles over a bench CSV.
//!
//! An instance is a (matrix, objective, sampling, seed) combination; the
//! objective is `Z` when present and `p` otherwise. For each instance the
//! smallest value across algorithms is the reference, and an algorithm's
//! curve at `theta` is the fraction of instances where its value is at most
//! `theta` times that reference. Failed runs count as infinitely worse. The
//! `theta` grid is the sorted set of finite ratios observed, so it runs from 1
//! to the largest finite ratio.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::io::Write;

use anyhow::{bail, Result};
use clap::ValueEnum;

use crate::bench::BenchRow;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Metric {
    Imbalance,
    Runtime,
}

impl Metric {
    fn value(self, row: &BenchRow) -> Option<f64> {
        match self {
            Metric::Imbalance => row.imbalance,
            Metric::Runtime => row.runtime_ms,
        }
    }

    fn label(self) -> &'static str {
        match self {
            Metric::Imbalance => "load imbalance",
            Metric::Runtime => "runtime",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProfileCurve {
    pub algorithm: String,
    /// `(theta, fraction)` pairs, `theta` ascending.
    pub points: Vec<(f64, f64)>,
}

impl ProfileCurve {
    pub fn fraction_at(&self, theta: f64) -> f64 {
        self.points
            .iter()
            .take_while(|&&(t, _)| t <= theta)
            .last()
            .map_or(0.0, |&(_, f)| f)
    }
}

type InstanceKey = (String, String, String, u64);

fn instance_key(row: &BenchRow) -> InstanceKey {
    let objective = match (row.z, row.p) {
        (Some(z), _) => format!("Z={z}"),
        (None, Some(p)) => format!("p={p}"),
        (None, None) => "?".into(),
    };
    let sampling = match (row.eps, row.s) {
        (Some(e), _) => format!("eps={e}"),
        (None, Some(s)) => format!("s={s}"),
        (None, None) => String::new(),
    };
    (row.matrix.clone(), objective, sampling, row.seed)
}

fn describe(key: &InstanceKey) -> String {
    let (m, obj, samp, seed) = key;
    if samp.is_empty() {
        format!("{m} {obj} seed={seed}")
    } else {
        format!("{m} {obj} {samp} seed={seed}")
    }
}

fn ratio(value: f64, best: f64) -> f64 {
    if !value.is_finite() || !best.is_finite() {
        f64::INFINITY
    } else if best <= 0.0 {
        if value <= 0.0 {
            1.0
        } else {
            f64::INFINITY
        }
    } else {
        value / best
    }
}

/// One curve per algorithm, in algorithm-name order.
pub fn cmd_profile(rows: &[BenchRow], metric: Metric) -> Result<Vec<ProfileCurve>> {
    let mut table: BTreeMap<String, BTreeMap<InstanceKey, f64>> = BTreeMap::new();
    for row in rows {
        let v = metric.value(row).unwrap_or(f64::INFINITY);
        let key = instance_key(row);
        if table
            .entry(row.algorithm.clone())
            .or_default()
            .insert(key.clone(), v)
            .is_some()
        {
            bail!("duplicate row for {} on {}", row.algorithm, describe(&key));
        }
    }
    if table.is_empty() {
        bail!("bench CSV has no rows");
    }
    if table.len() == 1 {
        log::info!("only one algorithm in the bench CSV; its profile is identically 1");
    }

    let all: BTreeSet<&InstanceKey> = table.values().flat_map(|m| m.keys()).collect();
    let mut problems = Vec::new();
    for (alg, m) in &table {
        for key in all.iter().filter(|k| !m.contains_key(**k)) {
            problems.push(format!("{alg} lacks {}", describe(key)));
        }
    }
    if !problems.is_empty() {
        bail!("algorithms do not share one instance set: {}", problems.join("; "));
    }

    let best: BTreeMap<&InstanceKey, f64> = all
        .iter()
        .map(|&k| (k, table.values().map(|m| m[k]).fold(f64::INFINITY, f64::min)))
        .collect();
    let ratios: BTreeMap<&String, Vec<f64>> = table
        .iter()
        .map(|(alg, m)| (alg, all.iter().map(|&k| ratio(m[k], best[k])).collect()))
        .collect();

    let mut grid: Vec<f64> = ratios.values().flatten().copied().filter(|r| r.is_finite()).collect();
    grid.sort_by(f64::total_cmp);
    grid.dedup();
    if grid.is_empty() {
        grid.push(1.0);
    }

    let total = all.len() as f64;
    Ok(ratios
        .into_iter()
        .map(|(alg, rs)| ProfileCurve {
            algorithm: alg.clone(),
            points: grid
                .iter()
                .map(|&t| (t, rs.iter().filter(|&&r| r <= t).count() as f64 / total))
                .collect(),
        })
        .collect())
}

/// Long format: `algorithm,theta,fraction`.
pub fn write_profile_csv<W: Write>(writer: W, curves: &[ProfileCurve]) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(["algorithm", "theta", "fraction"])?;
    for c in curves {
        for &(t, f) in &c.points {
            w.write_record([c.algorithm.as_str(), &t.to_string(), &f.to_string()])?;
        }
    }
    w.flush()?;
    Ok(())
}

const PALETTE: [&str; 9] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f", "#17becf",
];

/// Static SVG step plot of the curves.
pub fn profile_svg(curves: &[ProfileCurve], metric: Metric) -> String {
    let (w, h, left, right, top, bottom) = (640.0, 400.0, 60.0, 150.0, 30.0, 50.0);
    let pw = w - left - right;
    let ph = h - top - bottom;
    let tmax = curves
        .iter()
        .flat_map(|c| c.points.iter().map(|p| p.0))
        .fold(1.0f64, f64::max);
    let span = if tmax > 1.0 { tmax - 1.0 } else { 1.0 };
    let x = |t: f64| left + (t - 1.0) / span * pw;
    let y = |f: f64| top + (1.0 - f) * ph;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, r#"<rect width="{w}" height="{h}" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<path d="M{left},{top} V{} H{}" fill="none" stroke="black"/>"#,
        top + ph,
        left + pw
    );
    for i in 0..=4 {
        let f = i as f64 / 4.0;
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}" text-anchor="end">{f}</text>"#,
            left - 6.0,
            y(f) + 4.0
        );
        let t = 1.0 + span * f;
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}" text-anchor="middle">{t:.2}</text>"#,
            x(t),
            top + ph + 18.0
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" text-anchor="middle">theta ({})</text>"#,
        left + pw / 2.0,
        h - 10.0,
        metric.label()
    );
    for (i, c) in curves.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let mut d = String::new();
        let mut prev = 0.0;
        for (k, &(t, f)) in c.points.iter().enumerate() {
            if k == 0 {
                let _ = write!(d, "M{:.2},{:.2} ", x(t), y(f));
            } else {
                let _ = write!(d, "H{:.2} V{:.2} ", x(t), y(f));
            }
            prev = f;
        }
        let _ = write!(d, "H{:.2}", x(1.0 + span).max(x(tmax)));
        let _ = writeln!(
            s,
            r#"<path d="{}" fill="none" stroke="{color}" stroke-width="2"/>"#,
            d.trim_end()
        );
        let ly = top + 16.0 * i as f64 + 10.0;
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{ly}" fill="{color}">{} ({prev})</text>"#,
            left + pw + 10.0,
            c.algorithm
        );
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(matrix: &str, alg: &str, p: usize, value: Option<f64>) -> BenchRow {
        BenchRow {
            matrix: matrix.into(),
            algorithm: alg.into(),
            p: Some(p),
            z: None,
            s: Some(1.0),
            eps: None,
            seed: 0,
            imbalance: value,
            lmax: value.map(|v| v as u64),
            runtime_ms: value,
        }
    }

    #[test]
    fn single_algorithm_is_flat() {
        let rows = vec![row("a", "x", 4, Some(2.0)), row("b", "x", 4, Some(3.0))];
        let curves = cmd_profile(&rows, Metric::Imbalance).unwrap();
        assert_eq!(curves.len(), 1);
        assert_eq!(curves[0].points, vec![(1.0, 1.0)]);
    }

    #[test]
    fn dominated_curve() {
        let rows = vec![
            row("a", "good", 4, Some(2.0)),
            row("a", "bad", 4, Some(3.0)),
            row("b", "good", 4, Some(4.0)),
            row("b", "bad", 4, Some(4.0)),
        ];
        let curves = cmd_profile(&rows, Metric::Imbalance).unwrap();
        let bad = &curves[0];
        assert_eq!(bad.algorithm, "bad");
        assert_eq!(bad.points, vec![(1.0, 0.5), (1.5, 1.0)]);
        assert!(curves[1].points.iter().all(|&(_, f)| f == 1.0));
    }

    #[test]
    fn failures_never_count() {
        let rows = vec![row("a", "x", 4, Some(2.0)), row("a", "y", 4, None)];
        let curves = cmd_profile(&rows, Metric::Runtime).unwrap();
        assert_eq!(curves[1].fraction_at(1e9), 0.0);
    }

    #[test]
    fn mismatched_instances_listed() {
        let rows = vec![row("a", "x", 4, Some(2.0)), row("a", "y", 8, Some(2.0))];
        let err = cmd_profile(&rows, Metric::Imbalance).unwrap_err().to_string();
        assert!(err.contains("x lacks a p=8 s=1 seed=0"), "{err}");
        assert!(err.contains("y lacks a p=4 s=1 seed=0"), "{err}");
    }

    #[test]
    fn svg_is_well_formed() {
        let rows = vec![row("a", "x", 4, Some(2.0)), row("a", "y", 4, Some(3.0))];
        let svg = profile_svg(&cmd_profile(&rows, Metric::Imbalance).unwrap(), Metric::Imbalance);
        assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
        assert_eq!(svg.matches("<path").count(), 3);
    }
}
