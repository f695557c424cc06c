#![allow(dead_code)]

use proptest::prelude::*;
use symrect::SparseMatrix;

/// Entry-by-entry tile loads of `rows x cols`.
pub fn brute_tiles(a: &SparseMatrix, rows: &[usize], cols: &[usize]) -> Vec<Vec<u64>> {
    let locate = |cuts: &[usize], x: usize| cuts.iter().rposition(|&c| c <= x).unwrap();
    let mut t = vec![vec![0u64; cols.len() - 1]; rows.len() - 1];
    for (i, j, w) in a.entries() {
        t[locate(rows, i)][locate(cols, j)] += w;
    }
    t
}

pub fn brute_lmax(a: &SparseMatrix, cuts: &[usize]) -> u64 {
    brute_tiles(a, cuts, cuts).into_iter().flatten().max().unwrap_or(0)
}

/// Every strictly increasing vector `0 = c_0 < ... < c_p = n`.
pub fn all_cut_vectors(n: usize, p: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, p: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == p {
            let mut v = cur.clone();
            v.push(n);
            out.push(v);
            return;
        }
        let left = p - cur.len();
        for c in cur.last().unwrap() + 1..=n - left {
            cur.push(c);
            rec(n, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if p >= 1 && p <= n {
        rec(n, p, &mut vec![0], &mut out);
    }
    out
}

/// Random square matrix with `n` in `n_range`, up to `max_m` coordinates and
/// weights in `1..=max_w`.
pub fn matrix_strategy(
    n_range: std::ops::RangeInclusive<usize>,
    max_m: usize,
    max_w: u64,
) -> impl Strategy<Value = SparseMatrix> {
    n_range.prop_flat_map(move |n| {
        proptest::collection::vec((0..n, 0..n, 1..=max_w), 0..=max_m)
            .prop_map(move |e| SparseMatrix::from_entries(n, e).unwrap())
    })
}
