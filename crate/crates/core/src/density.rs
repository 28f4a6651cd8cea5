//! Local density, representatives and local density peaks.
//!
//! A point's density is its reverse-neighbor count divided by the summed
//! distance to its `k` nearest neighbors: points many others pick as a
//! neighbor, and whose own neighbors sit close, are dense. Each point's
//! representative is the densest member of its closed `k`-neighborhood; a
//! point that represents itself is a local density peak.

use crate::dataset::DistanceMatrix;
use crate::neighbors::NeighborIndex;

/// Which neighborhood size feeds density and sub-cluster growth.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum KMode {
    /// `k = λ`, the natural characteristic.
    #[default]
    Lambda,
    /// `k = max(nb)`, the largest reverse-neighbor count (capped at `n - 1`).
    MaxNb,
}

impl KMode {
    /// Resolves the neighborhood size for an index.
    pub fn resolve(self, idx: &NeighborIndex) -> usize {
        match self {
            KMode::Lambda => idx.lambda(),
            KMode::MaxNb => idx.max_nb().clamp(1, idx.len() - 1),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DensityProfile {
    /// Per-point density.
    pub rho: Vec<f64>,
    /// Per-point representative.
    pub rep: Vec<usize>,
    /// Points that are their own representative, ascending.
    pub peaks: Vec<usize>,
}

impl DensityProfile {
    pub fn is_peak(&self, p: usize) -> bool {
        self.rep[p] == p
    }
}

/// Per-point density `nb(p) / Σ d(p, q)` over the `k` nearest neighbors `q`.
///
/// A zero distance sum (all `k` neighbors coincide with `p`) is replaced by
/// half of the smallest positive sum in the dataset, so coincident points rank
/// denser than any spread-out point while every value stays finite and the
/// whole profile still scales as `1/c` under `x -> c·x`. If every sum is zero
/// the floor is 1.
pub fn compute_density(idx: &NeighborIndex, dm: &DistanceMatrix, k: usize) -> Vec<f64> {
    let sums: Vec<f64> =
        (0..idx.len()).map(|p| idx.knn(p, k).iter().map(|&q| dm.get(p, q)).sum()).collect();
    let floor = sums
        .iter()
        .copied()
        .filter(|&s| s > 0.0)
        .min_by(f64::total_cmp)
        .map_or(1.0, |s| s * 0.5);
    sums.iter()
        .zip(idx.nb())
        .map(|(&s, &nb)| nb as f64 / if s > 0.0 { s } else { floor })
        .collect()
}

/// Picks each point's representative (argmax of `rho` over itself and its `k`
/// nearest neighbors, lowest index on ties) and collects the peaks.
pub fn compute_representatives(idx: &NeighborIndex, rho: &[f64], k: usize) -> DensityProfile {
    let rep: Vec<usize> = (0..idx.len())
        .map(|p| {
            let mut best = p;
            for &q in idx.knn(p, k) {
                if rho[q] > rho[best] || (rho[q] == rho[best] && q < best) {
                    best = q;
                }
            }
            best
        })
        .collect();
    let peaks = (0..rep.len()).filter(|&p| rep[p] == p).collect();
    DensityProfile { rho: rho.to_vec(), rep, peaks }
}
