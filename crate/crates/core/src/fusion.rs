//! Sub-cluster fusion.
//!
//! Every pair of sub-clusters gets a fusion index `FI = Con × Simρ`:
//!
//! * `Con = (|ADS| + 1) · exp(-DC) / min(|S_i|, |S_j|)` is the boundary
//!   connectivity. `ADS` is the overlap of the two augmented sub-clusters
//!   (members plus their `λ` nearest neighbors) and `DC` is the single-link
//!   distance between the sub-clusters.
//! * `Simρ = min(ρ_i, ρ_j)/max(ρ_i, ρ_j) · (1 + min(σ²_i, σ²_j)/max(σ²_i, σ²_j))`
//!   compares mean member density and density variance.
//!
//! Scores are computed once over the initial sub-clusters. Pairs are then
//! drained in descending `FI` order through a union-find until the requested
//! number of clusters remains.

use std::cmp::Ordering;

use rayon::prelude::*;

use crate::dataset::DistanceMatrix;
use crate::error::{Error, Result};
use crate::neighbors::NeighborIndex;
use crate::partition::{ClusterStats, SubClustering};
use crate::union_find::UnionFind;

/// A sub-cluster together with the `λ` nearest neighbors of its members.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AugmentedSet(Vec<usize>);

impl AugmentedSet {
    /// Members, ascending.
    pub fn members(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, p: usize) -> bool {
        self.0.binary_search(&p).is_ok()
    }

    /// Points shared with `other`, ascending.
    pub fn intersection(&self, other: &AugmentedSet) -> Vec<usize> {
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::new();
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                Ordering::Less => i += 1,
                Ordering::Greater => j += 1,
                Ordering::Equal => {
                    out.push(a[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        out
    }
}

/// Augmented sub-cluster of cluster index `c` (label `c + 1`).
pub fn augment(sc: &SubClustering, idx: &NeighborIndex, c: usize) -> AugmentedSet {
    let mut set: Vec<usize> = sc.clusters[c]
        .iter()
        .flat_map(|&p| std::iter::once(p).chain(idx.nn(p).iter().copied()))
        .collect();
    set.sort_unstable();
    set.dedup();
    AugmentedSet(set)
}

/// Number of adjacent samples shared by two augmented sub-clusters.
pub fn adjacent_count(a: &AugmentedSet, b: &AugmentedSet) -> usize {
    a.intersection(b).len()
}

/// Single-link distance between cluster indices `i` and `j`.
pub fn inter_cluster_distance(sc: &SubClustering, dm: &DistanceMatrix, i: usize, j: usize) -> f64 {
    let mut best = f64::INFINITY;
    for &p in &sc.clusters[i] {
        let row = dm.row(p);
        for &q in &sc.clusters[j] {
            best = best.min(row[q]);
        }
    }
    best
}

pub fn boundary_connectivity(ads: usize, dc: f64, size_i: usize, size_j: usize) -> f64 {
    (ads as f64 + 1.0) * (-dc).exp() / size_i.min(size_j) as f64
}

/// Density similarity in `(0, 2]`. A zero maximum variance counts as a
/// variance ratio of 1.
pub fn density_similarity(a: &ClusterStats, b: &ClusterStats) -> Result<f64> {
    let (lo, hi) = min_max(a.mean, b.mean);
    if hi == 0.0 {
        return Err(Error::UndefinedSimilarity);
    }
    let (vlo, vhi) = min_max(a.variance, b.variance);
    let var_ratio = if vhi == 0.0 { 1.0 } else { vlo / vhi };
    Ok(lo / hi * (1.0 + var_ratio))
}

fn min_max(a: f64, b: f64) -> (f64, f64) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Score of one candidate merge. `i < j` are cluster indices (labels minus one).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairScore {
    pub i: usize,
    pub j: usize,
    pub fi: f64,
    pub con: f64,
    pub sim: f64,
    pub ads: usize,
    pub dc: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FusionPlan {
    /// All `m(m-1)/2` pairs, highest `FI` first, ties by `(i, j)`.
    pub pairs: Vec<PairScore>,
    /// Requested cluster count.
    pub target: usize,
    /// Number of sub-clusters scored.
    pub subclusters: usize,
}

/// Scores all sub-cluster pairs and orders them for merging.
pub fn build_fusion_plan(
    sc: &SubClustering,
    idx: &NeighborIndex,
    dm: &DistanceMatrix,
    target: usize,
) -> Result<FusionPlan> {
    let m = sc.len();
    if target == 0 || target > m {
        return Err(Error::InfeasibleTarget { requested: target, available: m });
    }
    let augmented: Vec<AugmentedSet> = (0..m).map(|c| augment(sc, idx, c)).collect();
    let rows: Vec<Result<Vec<PairScore>>> = (0..m)
        .into_par_iter()
        .map(|i| {
            (i + 1..m)
                .map(|j| {
                    let ads = adjacent_count(&augmented[i], &augmented[j]);
                    let dc = inter_cluster_distance(sc, dm, i, j);
                    let con =
                        boundary_connectivity(ads, dc, sc.clusters[i].len(), sc.clusters[j].len());
                    let sim = density_similarity(&sc.stats[i], &sc.stats[j])?;
                    Ok(PairScore { i, j, fi: con * sim, con, sim, ads, dc })
                })
                .collect()
        })
        .collect();
    let mut pairs = Vec::with_capacity(m * m.saturating_sub(1) / 2);
    for row in rows {
        pairs.extend(row?);
    }
    pairs.sort_by(|a, b| b.fi.total_cmp(&a.fi).then(a.i.cmp(&b.i)).then(a.j.cmp(&b.j)));
    Ok(FusionPlan { pairs, target, subclusters: m })
}

/// Outcome of draining a fusion plan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fused {
    /// Per-point labels in `1..=target`, numbered by first appearance.
    pub labels: Vec<usize>,
    /// Effective unions performed.
    pub merges: usize,
}

/// Merges sub-clusters pair by pair until `plan.target` clusters remain.
pub fn fuse(sc: &SubClustering, plan: &FusionPlan) -> Fused {
    let m = sc.len();
    let mut uf = UnionFind::new(m);
    let mut live = m;
    let mut merges = 0;
    for pair in &plan.pairs {
        if live <= plan.target {
            break;
        }
        if uf.union(pair.i, pair.j) {
            live -= 1;
            merges += 1;
        }
    }
    assert_eq!(live, plan.target, "fusion plan exhausted before reaching the target");

    let mut final_id = vec![0usize; m];
    let mut next = 0;
    let labels = sc
        .labels
        .iter()
        .map(|&l| {
            let root = uf.find(l - 1);
            if final_id[root] == 0 {
                next += 1;
                final_id[root] = next;
            }
            final_id[root]
        })
        .collect();
    Fused { labels, merges }
}
