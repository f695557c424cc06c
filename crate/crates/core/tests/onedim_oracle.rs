mod common;

use proptest::prelude::*;
use symrect::onedim::{optimal_1d_partition, IntervalSumTable};
use symrect::PartitionVector;

fn enumerate_min(table: &IntervalSumTable, p: usize) -> u64 {
    common::all_cut_vectors(table.rows(), p)
        .into_iter()
        .map(|c| table.bottleneck(&PartitionVector::new(c, table.rows()).unwrap()))
        .min()
        .unwrap()
}

fn table_strategy() -> impl Strategy<Value = (Vec<Vec<u64>>, usize)> {
    (1usize..=18, 1usize..=4, 1usize..=4).prop_flat_map(|(n, q, p)| {
        let row = proptest::collection::vec(prop_oneof![3 => Just(0u64), 5 => 0u64..10, 1 => 0u64..200], q);
        (proptest::collection::vec(row, n), Just(p.min(n)))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn bottleneck_matches_enumeration((rows, p) in table_strategy()) {
        let table = IntervalSumTable::from_row_loads(&rows).unwrap();
        let cuts = optimal_1d_partition(&table, p).unwrap();
        prop_assert_eq!(cuts.intervals(), p);
        prop_assert_eq!(table.bottleneck(&cuts), enumerate_min(&table, p));
    }
}
