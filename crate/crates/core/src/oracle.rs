//! Exhaustive optimal partitioning for small matrices and the vertex-cover
//! reduction used to generate hard instances with known answers.

use crate::error::{Error, Result};
use crate::matrix::SparseMatrix;
use crate::metrics::{load_imbalance, tile_loads, Imbalance};
use crate::partition::PartitionVector;

/// Size limits for the exhaustive search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleLimits {
    pub max_n: usize,
    pub max_p: usize,
}

impl Default for OracleLimits {
    fn default() -> Self {
        Self { max_n: 24, max_p: 8 }
    }
}

/// Dense `(n + 1) x (n + 1)` table of leading-rectangle loads.
struct DensePrefix {
    n: usize,
    table: Vec<u64>,
}

impl DensePrefix {
    fn new(a: &SparseMatrix) -> Self {
        let n = a.n();
        let w = n + 1;
        let mut table = vec![0u64; w * w];
        for (i, j, v) in a.entries() {
            table[(i + 1) * w + j + 1] += v;
        }
        for i in 1..=n {
            for j in 1..=n {
                table[i * w + j] += table[(i - 1) * w + j] + table[i * w + j - 1] - table[(i - 1) * w + j - 1];
            }
        }
        Self { n, table }
    }

    #[inline]
    fn at(&self, i: usize, j: usize) -> u64 {
        self.table[i * (self.n + 1) + j]
    }

    #[inline]
    fn rect(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> u64 {
        self.at(r1, c1) + self.at(r0, c0) - self.at(r0, c1) - self.at(r1, c0)
    }

    /// Heaviest tile created by closing the interval `[cuts.last(), t)`.
    fn frontier_max(&self, cuts: &[usize], t: usize) -> u64 {
        let s = *cuts.last().unwrap();
        let mut max = self.rect(s, t, s, t);
        for w in cuts.windows(2) {
            max = max.max(self.rect(s, t, w[0], w[1])).max(self.rect(w[0], w[1], s, t));
        }
        max
    }
}

fn check_n(a: &SparseMatrix, limits: &OracleLimits) -> Result<()> {
    if a.n() > limits.max_n {
        return Err(Error::TooLarge(format!(
            "exhaustive search is limited to n <= {}, got n = {}",
            limits.max_n,
            a.n()
        )));
    }
    Ok(())
}

struct MliSearch<'a> {
    prefix: &'a DensePrefix,
    p: usize,
    best: u64,
    best_cuts: Vec<usize>,
}

impl MliSearch<'_> {
    fn dfs(&mut self, cuts: &mut Vec<usize>, partial: u64) {
        let n = self.prefix.n;
        let k = cuts.len();
        if k == self.p {
            let lmax = partial.max(self.prefix.frontier_max(cuts, n));
            if lmax < self.best {
                self.best = lmax;
                self.best_cuts = cuts.clone();
                self.best_cuts.push(n);
            }
            return;
        }
        let start = *cuts.last().unwrap() + 1;
        let end = n - (self.p - k);
        for t in start..=end {
            let load = partial.max(self.prefix.frontier_max(cuts, t));
            if load >= self.best {
                break;
            }
            cuts.push(t);
            self.dfs(cuts, load);
            cuts.pop();
        }
    }
}

/// Minimum maximum tile load over all symmetric `p`-way partitions, with the
/// lexicographically smallest minimizer.
pub fn optimal_lmax(a: &SparseMatrix, p: usize, limits: &OracleLimits) -> Result<(PartitionVector, u64)> {
    check_n(a, limits)?;
    if p > limits.max_p {
        return Err(Error::TooLarge(format!(
            "exhaustive search is limited to p <= {}, got p = {p}",
            limits.max_p
        )));
    }
    let n = a.n();
    if p == 0 || p > n {
        return Err(Error::Infeasible(format!(
            "cannot split {n} indices into {p} nonempty intervals"
        )));
    }
    let prefix = DensePrefix::new(a);
    let mut search = MliSearch {
        prefix: &prefix,
        p,
        best: u64::MAX,
        best_cuts: Vec::new(),
    };
    search.dfs(&mut vec![0], 0);
    Ok((PartitionVector::from_sorted_unchecked(search.best_cuts), search.best))
}

/// Optimal symmetric `p`-way partition and its load imbalance.
pub fn optimal_mli(a: &SparseMatrix, p: usize, limits: &OracleLimits) -> Result<(PartitionVector, Imbalance)> {
    let (cuts, _) = optimal_lmax(a, p, limits)?;
    let lambda = load_imbalance(&tile_loads(a, &cuts, &cuts)?)?;
    Ok((cuts, lambda))
}

fn feasible_dfs(prefix: &DensePrefix, p: usize, bound: u64, cuts: &mut Vec<usize>) -> bool {
    let n = prefix.n;
    let k = cuts.len();
    if k == p {
        return prefix.frontier_max(cuts, n) <= bound;
    }
    let start = *cuts.last().unwrap() + 1;
    for t in start..=n - (p - k) {
        if prefix.frontier_max(cuts, t) > bound {
            break;
        }
        cuts.push(t);
        if feasible_dfs(prefix, p, bound, cuts) {
            return true;
        }
        cuts.pop();
    }
    false
}

/// Whether some symmetric `p`-way partition keeps every tile within `bound`;
/// returns the lexicographically smallest witness.
pub fn feasible_with(a: &SparseMatrix, p: usize, bound: u64, limits: &OracleLimits) -> Result<Option<PartitionVector>> {
    check_n(a, limits)?;
    let n = a.n();
    if p == 0 || p > n {
        return Ok(None);
    }
    let prefix = DensePrefix::new(a);
    let mut cuts = vec![0];
    if feasible_dfs(&prefix, p, bound, &mut cuts) {
        cuts.push(n);
        Ok(Some(PartitionVector::from_sorted_unchecked(cuts)))
    } else {
        Ok(None)
    }
}

/// Fewest intervals keeping every tile within `bound`, with a witness.
///
/// Only the dimension limit applies: the search walks `p = 1, 2, ...` and each
/// step prunes on the bound.
pub fn optimal_mnc(a: &SparseMatrix, bound: u64, limits: &OracleLimits) -> Result<PartitionVector> {
    check_n(a, limits)?;
    let n = a.n();
    let prefix = DensePrefix::new(a);
    for p in 1..=n {
        let mut cuts = vec![0];
        if feasible_dfs(&prefix, p, bound, &mut cuts) {
            cuts.push(n);
            return Ok(PartitionVector::from_sorted_unchecked(cuts));
        }
    }
    Err(Error::Infeasible(format!(
        "no partition keeps every tile within {bound}, even with n = {n} intervals"
    )))
}

/// Vertex cover decision instance: does a cover of size at most `k` exist?
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VcInstance {
    vertices: usize,
    edges: Vec<(usize, usize)>,
    k: usize,
}

impl VcInstance {
    /// Edges are 0-based and undirected; self-loops and duplicates are
    /// rejected.
    pub fn new(vertices: usize, edges: Vec<(usize, usize)>, k: usize) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        for &(u, v) in &edges {
            if u >= vertices || v >= vertices {
                return Err(Error::InvalidConfig(format!(
                    "edge ({u}, {v}) references a vertex outside 0..{vertices}"
                )));
            }
            if u == v {
                return Err(Error::InvalidConfig(format!("self-loop at vertex {u}")));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::InvalidConfig(format!("duplicate edge ({u}, {v})")));
            }
        }
        if k > vertices {
            return Err(Error::InvalidConfig(format!(
                "cover size {k} exceeds the vertex count {vertices}"
            )));
        }
        Ok(Self { vertices, edges, k })
    }

    pub fn vertices(&self) -> usize {
        self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Brute force over all vertex subsets of size `k`.
    pub fn has_cover(&self) -> bool {
        let n = self.vertices;
        (0u64..1 << n)
            .filter(|mask| mask.count_ones() as usize == self.k)
            .any(|mask| {
                self.edges
                    .iter()
                    .all(|&(u, v)| mask >> u & 1 == 1 || mask >> v & 1 == 1)
            })
    }
}

/// Build the symmetric partitioning instance `(A', Z = 1, p = n + 2 + k)`
/// that is feasible exactly when `vc` has a cover of size `k`.
///
/// `A'` has dimension `2n + 2`. Row and column 0 carry ones at `0` and at
/// `4t + 1, 4t + 2`; row and column 1 carry ones at `4t + 3, 4t + 4`. These
/// force cuts at `1, 2, 4, ..., 2n`. Every edge `(u, v)` puts a 2 x 2
/// identity block at `(2u', 2v')` and `(2v', 2u')` with `u' = u + 1`, which
/// can only be split by an optional cut at `2u' + 1` or `2v' + 1`.
pub fn vc_to_srp(vc: &VcInstance) -> (SparseMatrix, u64, usize) {
    let n = vc.vertices;
    let dim = 2 * n + 2;
    let mut coords = vec![(0usize, 0usize)];
    let mut border = |row: usize, first: usize| {
        let mut c = first;
        while c < dim {
            for x in [c, c + 1] {
                if x < dim {
                    coords.push((row, x));
                    coords.push((x, row));
                }
            }
            c += 4;
        }
    };
    border(0, 1);
    border(1, 3);
    for &(u, v) in &vc.edges {
        let (bu, bv) = (2 * (u + 1), 2 * (v + 1));
        for d in 0..2 {
            coords.push((bu + d, bv + d));
            coords.push((bv + d, bu + d));
        }
    }
    let a = SparseMatrix::from_pattern(dim, coords).expect("indices are in range");
    (a, 1, n + 2 + vc.k)
}
