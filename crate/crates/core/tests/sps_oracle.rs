mod common;

use proptest::prelude::*;
use symrect::{PrefixLoad, SparsePrefixSum};

fn brute_prefix(a: &symrect::SparseMatrix, i: usize, j: usize) -> u64 {
    a.entries().filter(|&(r, c, _)| r < i && c < j).map(|e| e.2).sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn queries_match_brute_force(a in common::matrix_strategy(1..=64, 300, 5)) {
        let s = SparsePrefixSum::new(&a);
        let n = a.n();
        for i in 0..=n {
            for j in 0..=n {
                prop_assert_eq!(s.query(i, j).unwrap(), brute_prefix(&a, i, j));
            }
        }
        let levels = n.ilog2() as usize + 1;
        prop_assert!(s.stored_pairs() <= a.nnz() * levels);
    }

    #[test]
    fn rectangles_match_direct_scan(
        a in common::matrix_strategy(1..=40, 200, 3),
        r in any::<[prop::sample::Index; 4]>(),
    ) {
        let n = a.n();
        let mut rows = [r[0].index(n + 1), r[1].index(n + 1)];
        let mut cols = [r[2].index(n + 1), r[3].index(n + 1)];
        rows.sort();
        cols.sort();
        let s = SparsePrefixSum::new(&a);
        let d = symrect::DirectScan::new(&a);
        prop_assert_eq!(
            s.rect_load(rows[0], rows[1], cols[0], cols[1]).unwrap(),
            d.rect(rows[0], rows[1], cols[0], cols[1])
        );
    }
}
