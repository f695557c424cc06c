use std::borrow::Cow;
use std::fmt;
use std::time::{Duration, Instant};

use anyhow::Result;
use clap::ValueEnum;
use symrect::io::Target;
use symrect::partitioners::{bac, bal, nicol2d, opal, pal, rac, transform, MliSolver, MncSolver};
use symrect::sparsify::{auto_factor, mnc_p_hint, scale_bound, sparsify_with_factor};
use symrect::{uniform_partition, DirectScan, PartitionVector, SparseMatrix, SparsePrefixSum};

use crate::UsageError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, ValueEnum)]
pub enum Algorithm {
    Uni,
    Rac,
    Nic,
    Pal,
    Opal,
    BacPal,
    BacOpal,
    BalRac,
    BalUni,
}

impl Algorithm {
    pub const ALL: [Algorithm; 9] = [
        Algorithm::Uni,
        Algorithm::Rac,
        Algorithm::Nic,
        Algorithm::Pal,
        Algorithm::Opal,
        Algorithm::BacPal,
        Algorithm::BacOpal,
        Algorithm::BalRac,
        Algorithm::BalUni,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Uni => "uni",
            Algorithm::Rac => "rac",
            Algorithm::Nic => "nic",
            Algorithm::Pal => "pal",
            Algorithm::Opal => "opal",
            Algorithm::BacPal => "bac-pal",
            Algorithm::BacOpal => "bac-opal",
            Algorithm::BalRac => "bal-rac",
            Algorithm::BalUni => "bal-uni",
        }
    }

    /// `true` for algorithms driven by an interval count, `false` for those
    /// driven by a load bound.
    pub fn takes_count(self) -> bool {
        matches!(
            self,
            Algorithm::Uni | Algorithm::Rac | Algorithm::Nic | Algorithm::BacPal | Algorithm::BacOpal
        )
    }

    pub fn is_symmetric(self) -> bool {
        self != Algorithm::Nic
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Sampling requested on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum Sampling {
    #[default]
    Off,
    Factor(f64),
    Tolerance(f64),
}

impl Sampling {
    pub fn eps(self) -> Option<f64> {
        match self {
            Sampling::Tolerance(e) => Some(e),
            _ => None,
        }
    }

    pub fn validate(self) -> std::result::Result<(), UsageError> {
        match self {
            Sampling::Factor(s) if !(s > 0.0 && s <= 1.0) => {
                Err(UsageError(format!("--sparsify-factor must lie in (0, 1], got {s}")))
            }
            Sampling::Tolerance(e) if !(e > 0.0 && e < 1.0) => {
                Err(UsageError(format!("--sparsify-eps must lie in (0, 1), got {e}")))
            }
            _ => Ok(()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunOptions {
    pub tau: usize,
    pub sampling: Sampling,
    pub seed: u64,
    /// Build the sparse prefix sum for PAL; otherwise scan rows directly.
    pub use_bit: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        Self {
            tau: symrect::partitioners::DEFAULT_TAU,
            sampling: Sampling::Off,
            seed: 0,
            use_bit: true,
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub rows: PartitionVector,
    /// Column cuts of a non-symmetric result.
    pub cols: Option<PartitionVector>,
    /// Keep probability used (1 without sampling).
    pub factor: f64,
    pub elapsed: Duration,
}

fn valid_pairs() -> String {
    let counts: Vec<_> = Algorithm::ALL
        .iter()
        .filter(|a| a.takes_count())
        .map(|a| a.name())
        .collect();
    let loads: Vec<_> = Algorithm::ALL
        .iter()
        .filter(|a| !a.takes_count())
        .map(|a| a.name())
        .collect();
    format!(
        "--p works with {}; --load works with {}",
        counts.join(", "),
        loads.join(", ")
    )
}

pub fn check_pair(alg: Algorithm, target: Target) -> std::result::Result<(), UsageError> {
    let ok = matches!(target, Target::P(_)) == alg.takes_count();
    if ok {
        Ok(())
    } else {
        let given = match target {
            Target::P(_) => "--p",
            Target::Load(_) => "--load",
        };
        Err(UsageError(format!("{alg} does not accept {given}: {}", valid_pairs())))
    }
}

/// Keep probability that `sampling` selects for `a` under `target`. A load
/// bound is turned into an interval-count hint first.
pub fn planned_factor(a: &SparseMatrix, target: Target, sampling: Sampling) -> f64 {
    match (sampling, target) {
        (Sampling::Off, _) => 1.0,
        (Sampling::Factor(s), _) => s,
        (Sampling::Tolerance(e), Target::P(p)) => auto_factor(a.nnz(), p, e),
        (Sampling::Tolerance(e), Target::Load(z)) => auto_factor(a.nnz(), mnc_p_hint(a.n(), z), e),
    }
}

/// Runs `alg` on `a`, sampling first when requested. The elapsed time covers
/// sampling, auxiliary structures and the algorithm itself.
pub fn run(a: &SparseMatrix, alg: Algorithm, target: Target, opts: &RunOptions) -> Result<RunOutcome> {
    check_pair(alg, target)?;
    opts.sampling.validate()?;
    let start = Instant::now();
    let factor = planned_factor(a, target, opts.sampling);
    let b: Cow<'_, SparseMatrix> = if factor < 1.0 && alg != Algorithm::Uni {
        Cow::Owned(sparsify_with_factor(a, factor, opts.seed))
    } else {
        Cow::Borrowed(a)
    };
    let b = b.as_ref();
    let mut cols = None;
    let rows = match (alg, target) {
        (Algorithm::Uni, Target::P(p)) => uniform_partition(a.n(), p)?,
        (Algorithm::Rac, Target::P(p)) => rac(b, p, opts.tau)?,
        (Algorithm::Nic, Target::P(p)) => {
            let r = nicol2d(b, p, p, opts.tau)?;
            cols = Some(r.cols);
            r.rows
        }
        (Algorithm::BacPal, Target::P(p)) => {
            if opts.use_bit {
                let s = SparsePrefixSum::new(b);
                bac(b, p, MncSolver::Pal(&s))?
            } else {
                let d = DirectScan::new(b);
                bac(b, p, MncSolver::Pal(&d))?
            }
        }
        (Algorithm::BacOpal, Target::P(p)) => {
            let t = transform(b);
            bac(b, p, MncSolver::Opal(&t))?
        }
        (Algorithm::Pal, Target::Load(z)) => {
            let z = scale_bound(z, factor);
            if opts.use_bit {
                pal(b, z, &SparsePrefixSum::new(b))?
            } else {
                pal(b, z, &DirectScan::new(b))?
            }
        }
        (Algorithm::Opal, Target::Load(z)) => opal(b, scale_bound(z, factor))?,
        (Algorithm::BalRac, Target::Load(z)) => bal(b, scale_bound(z, factor), MliSolver::Rac { tau: opts.tau })?,
        (Algorithm::BalUni, Target::Load(z)) => bal(b, scale_bound(z, factor), MliSolver::Uniform)?,
        _ => unreachable!("checked by check_pair"),
    };
    Ok(RunOutcome {
        rows,
        cols,
        factor: if alg == Algorithm::Uni { 1.0 } else { factor },
        elapsed: start.elapsed(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use symrect::gen::toy_matrix;

    #[test]
    fn names_round_trip_through_clap() {
        for alg in Algorithm::ALL {
            assert_eq!(Algorithm::from_str(alg.name(), false).unwrap(), alg);
        }
    }

    #[test]
    fn mismatched_objective_is_a_usage_error() {
        let a = toy_matrix();
        let err = run(&a, Algorithm::Rac, Target::Load(3), &RunOptions::default()).unwrap_err();
        let usage = err.downcast_ref::<UsageError>().unwrap();
        assert!(usage.0.contains("--load works with pal"));
    }

    #[test]
    fn uniform_on_six() {
        let a = toy_matrix();
        let out = run(&a, Algorithm::Uni, Target::P(3), &RunOptions::default()).unwrap();
        assert_eq!(out.rows.cuts(), &[0, 2, 4, 6]);
    }

    #[test]
    fn direct_scan_matches_bit() {
        let a = toy_matrix();
        let with = run(&a, Algorithm::BacPal, Target::P(3), &RunOptions::default()).unwrap();
        let without = run(
            &a,
            Algorithm::BacPal,
            Target::P(3),
            &RunOptions {
                use_bit: false,
                ..RunOptions::default()
            },
        )
        .unwrap();
        assert_eq!(with.rows, without.rows);
    }
}
