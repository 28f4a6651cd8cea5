//! Parameter-free neighborhood search.
//!
//! Every point keeps expanding its neighborhood one rank at a time. After each
//! round, the number of points that nobody has picked as a neighbor yet is
//! recorded. The search radius at which that count stops changing is the
//! natural characteristic `λ`. Two points are *natural neighbors* when each is
//! among the other's `λ` nearest neighbors.
//!
//! Ties in distance are broken by ascending point index, and a point is never
//! its own neighbor.

use std::cmp::Ordering;

use rayon::prelude::*;

use crate::dataset::DistanceMatrix;
use crate::error::{Error, Result};

/// Result of the natural-neighbor search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NeighborIndex {
    lambda: usize,
    /// Sorted neighbor prefixes; each holds at least `lambda` entries.
    lists: Vec<Vec<usize>>,
    nb: Vec<usize>,
    num_trace: Vec<usize>,
}

impl NeighborIndex {
    /// Natural characteristic `λ`.
    pub fn lambda(&self) -> usize {
        self.lambda
    }

    pub fn len(&self) -> usize {
        self.nb.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nb.is_empty()
    }

    /// The `λ` nearest neighbors of `p`, closest first.
    pub fn nn(&self, p: usize) -> &[usize] {
        &self.lists[p][..self.lambda]
    }

    /// The `k` nearest neighbors of `p`. Panics if `k` exceeds [`depth`](Self::depth).
    pub fn knn(&self, p: usize, k: usize) -> &[usize] {
        &self.lists[p][..k]
    }

    /// How many neighbors per point are materialized.
    pub fn depth(&self) -> usize {
        self.lists.first().map_or(0, Vec::len)
    }

    /// Reverse-neighbor counts at termination.
    pub fn nb(&self) -> &[usize] {
        &self.nb
    }

    pub fn max_nb(&self) -> usize {
        self.nb.iter().copied().max().unwrap_or(0)
    }

    /// Number of points without a reverse neighbor after each round.
    pub fn num_trace(&self) -> &[usize] {
        &self.num_trace
    }

    /// Materializes at least `k` neighbors per point (capped at `n - 1`).
    pub fn with_depth(mut self, dm: &DistanceMatrix, k: usize) -> Self {
        let k = k.min(self.len().saturating_sub(1));
        if k > self.depth() {
            self.lists = sorted_prefixes(dm, k);
        }
        self
    }
}

fn by_distance(row: &[f64]) -> impl Fn(&usize, &usize) -> Ordering + '_ {
    move |&a, &b| row[a].total_cmp(&row[b]).then(a.cmp(&b))
}

/// The `k` closest points to `p` under the (distance, index) order.
fn sorted_prefix(dm: &DistanceMatrix, p: usize, k: usize) -> Vec<usize> {
    let row = dm.row(p);
    let mut cand: Vec<usize> = (0..dm.len()).filter(|&q| q != p).collect();
    let cmp = by_distance(row);
    if k < cand.len() {
        cand.select_nth_unstable_by(k, &cmp);
        cand.truncate(k);
    }
    cand.sort_unstable_by(cmp);
    cand
}

fn sorted_prefixes(dm: &DistanceMatrix, k: usize) -> Vec<Vec<usize>> {
    (0..dm.len()).into_par_iter().map(|p| sorted_prefix(dm, p, k)).collect()
}

const INITIAL_DEPTH: usize = 16;

/// Runs the natural-neighbor search over a distance matrix.
///
/// Round `r` hands every point its `r`-th nearest neighbor and bumps that
/// neighbor's reverse count. The search stops when the count of points with
/// no reverse neighbor repeats, reaches zero, or `r` hits `n - 1`.
pub fn nan_search(dm: &DistanceMatrix) -> Result<NeighborIndex> {
    let n = dm.len();
    if n < 2 {
        return Err(Error::Degenerate { n });
    }
    let mut depth = INITIAL_DEPTH.min(n - 1);
    let mut lists = sorted_prefixes(dm, depth);
    let mut nb = vec![0usize; n];
    let mut num_trace = Vec::new();
    let mut prev = n;
    let mut r = 1;
    loop {
        if r > depth {
            depth = (depth * 2).min(n - 1);
            lists = sorted_prefixes(dm, depth);
        }
        for list in &lists {
            nb[list[r - 1]] += 1;
        }
        let num = nb.iter().filter(|&&c| c == 0).count();
        num_trace.push(num);
        if num == prev || num == 0 || r == n - 1 {
            break;
        }
        prev = num;
        r += 1;
    }
    Ok(NeighborIndex { lambda: r, lists, nb, num_trace })
}

/// Points that are mutually within each other's `λ`-neighborhood, ascending.
pub fn natural_neighbors(idx: &NeighborIndex, p: usize) -> Vec<usize> {
    let mut out: Vec<usize> = idx.nn(p).iter().copied().filter(|&x| idx.nn(x).contains(&p)).collect();
    out.sort_unstable();
    out
}
