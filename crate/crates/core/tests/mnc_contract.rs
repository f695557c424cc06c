mod common;

use proptest::prelude::*;
use symrect::partitioners::{bal, opal, pal, MliSolver, MncSolver, DEFAULT_TAU};
use symrect::{Error, SparseMatrix, SparsePrefixSum};

/// A bound between the heaviest entry and the total weight.
fn instance() -> impl Strategy<Value = (SparseMatrix, u64)> {
    common::matrix_strategy(1..=60, 400, 4).prop_flat_map(|a| {
        let lo = a.max_weight().max(1);
        let hi = a.total_weight().max(lo);
        (Just(a), lo..=hi)
    })
}

fn assert_locally_maximal(a: &SparseMatrix, cuts: &[usize], z: u64) -> Result<(), TestCaseError> {
    for i in 1..cuts.len() - 1 {
        let mut moved = cuts.to_vec();
        moved[i] += 1;
        moved.dedup();
        prop_assert!(
            common::brute_lmax(a, &moved) > z,
            "advancing cut {} of {:?} keeps every tile within {}",
            i,
            cuts,
            z
        );
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn pal_equals_opal_and_meets_the_contract((a, z) in instance()) {
        let s = SparsePrefixSum::new(&a);
        match (pal(&a, z, &s), opal(&a, z)) {
            (Ok(x), Ok(y)) => {
                prop_assert_eq!(&x, &y);
                prop_assert!(common::brute_lmax(&a, x.cuts()) <= z);
                assert_locally_maximal(&a, x.cuts(), z)?;
            }
            (Err(Error::InfeasibleLoad { partial: p1, .. }), Err(Error::InfeasibleLoad { partial: p2, .. })) => {
                prop_assert_eq!(p1, p2);
            }
            (x, y) => prop_assert!(false, "pal {:?} vs opal {:?}", x, y),
        }
    }

    #[test]
    fn bal_outputs_fit_the_bound((a, z) in instance()) {
        prop_assume!(a.total_weight() > 0);
        let s = SparsePrefixSum::new(&a);
        for mli in [MliSolver::Rac { tau: DEFAULT_TAU }, MliSolver::Bac(MncSolver::Pal(&s))] {
            if let Ok(c) = bal(&a, z, mli) {
                prop_assert!(common::brute_lmax(&a, c.cuts()) <= z);
            }
        }
    }
}

/// Smallest p whose mli output fits, and whether acceptance is monotone in p.
fn sweep(a: &SparseMatrix, z: u64, mli: MliSolver<'_>) -> (Option<usize>, bool) {
    let fits: Vec<bool> = (1..=a.n())
        .map(|p| common::brute_lmax(a, mli.run(a, p).unwrap().cuts()) <= z)
        .collect();
    let first = fits.iter().position(|&f| f);
    let monotone = first.is_none_or(|k| fits[k..].iter().all(|&f| f));
    (first.map(|k| k + 1), monotone)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn bal_matches_linear_sweep_when_feasibility_is_monotone((a, z) in instance()) {
        prop_assume!(a.total_weight() > 0 && a.n() <= 30);
        let s = SparsePrefixSum::new(&a);
        for mli in [MliSolver::Rac { tau: DEFAULT_TAU }, MliSolver::Bac(MncSolver::Pal(&s)), MliSolver::Uniform] {
            let (best, monotone) = sweep(&a, z, mli);
            let got = bal(&a, z, mli);
            match best {
                None => prop_assert!(got.is_err()),
                Some(p) if monotone => prop_assert_eq!(got.unwrap().intervals(), p),
                Some(_) => {
                    let c = got.unwrap();
                    prop_assert!(common::brute_lmax(&a, c.cuts()) <= z);
                }
            }
        }
    }
}

#[test]
fn pal_direct_scan_matches_prefix_structure() {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
    for _ in 0..50 {
        let a = symrect::gen::random_matrix(&mut rng, 40, 300, 3);
        let s = SparsePrefixSum::new(&a);
        let d = symrect::DirectScan::new(&a);
        for z in [a.max_weight(), a.total_weight() / 9, a.total_weight() / 4] {
            let x = pal(&a, z, &s).ok();
            let y = pal(&a, z, &d).ok();
            assert_eq!(x, y);
        }
    }
}

#[test]
fn identity_bounds() {
    let a = SparseMatrix::identity(9).unwrap();
    let s = SparsePrefixSum::new(&a);
    assert_eq!(pal(&a, 1, &s).unwrap().intervals(), 9);
    assert_eq!(opal(&a, 9).unwrap().cuts(), &[0, 9]);
    let c = bal(&a, 1, MliSolver::Bac(MncSolver::Pal(&s))).unwrap();
    assert_eq!(c.intervals(), 9);
    let c = bal(&a, 9, MliSolver::Rac { tau: DEFAULT_TAU }).unwrap();
    assert_eq!(c.cuts(), &[0, 9]);
}
