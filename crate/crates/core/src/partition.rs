//! Initial sub-cluster partitioning.
//!
//! Local density peaks seed sub-clusters that grow breadth-first through
//! mutual-neighbor links. Points left over after growth are outliers: they are
//! kept out of the per-cluster density statistics and then attached to the
//! nearest labelled point.

use std::collections::VecDeque;

use crate::dataset::DistanceMatrix;
use crate::density::DensityProfile;
use crate::error::{Error, Result};
use crate::neighbors::NeighborIndex;

/// Which newly labelled points keep growing their sub-cluster.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum EnqueueMode {
    /// Any point that is some point's representative.
    #[default]
    RepImage,
    /// Only local density peaks.
    PeaksOnly,
}

/// Size and density moments of one sub-cluster.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClusterStats {
    pub size: usize,
    /// Mean member density.
    pub mean: f64,
    /// Population variance of member density.
    pub variance: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SubClustering {
    /// Per-point label: `0` is unassigned, `1..=m` names a sub-cluster.
    pub labels: Vec<usize>,
    /// Members of sub-cluster `c` (label `c + 1`), ascending.
    pub clusters: Vec<Vec<usize>>,
    /// Density statistics over the members labelled during growth.
    pub stats: Vec<ClusterStats>,
}

impl SubClustering {
    /// Builds a complete sub-clustering from arbitrary per-point labels.
    ///
    /// Labels are renumbered `1..=m` by first appearance and statistics are
    /// taken over every member.
    pub fn from_labels(labels: &[usize], rho: &[f64]) -> Result<Self> {
        if labels.len() != rho.len() {
            return Err(Error::LengthMismatch { left: labels.len(), right: rho.len() });
        }
        let mut ids: Vec<usize> = Vec::new();
        let mut clusters: Vec<Vec<usize>> = Vec::new();
        let mut out = Vec::with_capacity(labels.len());
        for (p, l) in labels.iter().enumerate() {
            let c = match ids.iter().position(|x| x == l) {
                Some(c) => c,
                None => {
                    ids.push(*l);
                    clusters.push(Vec::new());
                    ids.len() - 1
                }
            };
            clusters[c].push(p);
            out.push(c + 1);
        }
        let stats = compute_cluster_stats(&clusters, rho);
        Ok(Self { labels: out, clusters, stats })
    }

    /// Number of sub-clusters `m`.
    pub fn len(&self) -> usize {
        self.clusters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clusters.is_empty()
    }

    pub fn unassigned(&self) -> impl Iterator<Item = usize> + '_ {
        self.labels.iter().enumerate().filter(|(_, &l)| l == 0).map(|(p, _)| p)
    }
}

fn members_of(labels: &[usize], m: usize) -> Vec<Vec<usize>> {
    let mut clusters = vec![Vec::new(); m];
    for (p, &l) in labels.iter().enumerate() {
        if l > 0 {
            clusters[l - 1].push(p);
        }
    }
    clusters
}

/// Grows sub-clusters from local density peaks.
///
/// Peaks are visited in ascending index order; an unlabelled peak opens a new
/// label. From each dequeued point, every unlabelled neighbor that also lists
/// that point among its own `k` nearest neighbors inherits the label, and is
/// enqueued when it qualifies under `mode`.
pub fn divide_subclusters(
    idx: &NeighborIndex,
    prof: &DensityProfile,
    k: usize,
    mode: EnqueueMode,
) -> SubClustering {
    let n = idx.len();
    let mut is_rep = vec![false; n];
    for &r in &prof.rep {
        is_rep[r] = true;
    }
    let grows = |q: usize| match mode {
        EnqueueMode::RepImage => is_rep[q],
        EnqueueMode::PeaksOnly => prof.is_peak(q),
    };

    let mut labels = vec![0usize; n];
    let mut next = 1;
    let mut queue = VecDeque::new();
    for &seed in &prof.peaks {
        if labels[seed] != 0 {
            continue;
        }
        labels[seed] = next;
        next += 1;
        queue.push_back(seed);
        while let Some(head) = queue.pop_front() {
            for &q in idx.knn(head, k) {
                if labels[q] == 0 && idx.knn(q, k).contains(&head) {
                    labels[q] = labels[head];
                    if grows(q) {
                        queue.push_back(q);
                    }
                }
            }
        }
    }

    let clusters = members_of(&labels, next - 1);
    let stats = compute_cluster_stats(&clusters, &prof.rho);
    SubClustering { labels, clusters, stats }
}

/// Mean and population variance of member densities, per cluster.
pub fn compute_cluster_stats(clusters: &[Vec<usize>], rho: &[f64]) -> Vec<ClusterStats> {
    clusters
        .iter()
        .map(|members| {
            let size = members.len();
            let mean = members.iter().map(|&p| rho[p]).sum::<f64>() / size as f64;
            let variance =
                members.iter().map(|&p| (rho[p] - mean).powi(2)).sum::<f64>() / size as f64;
            ClusterStats { size, mean, variance }
        })
        .collect()
}

/// Attaches every unassigned point to the sub-cluster of its nearest labelled
/// point.
///
/// Outliers are resolved closest-first, and each one counts as labelled for
/// those that follow, so chains of outliers inherit outward from a cluster.
/// Density statistics are carried over unchanged.
pub fn assign_outliers(sc: &SubClustering, dm: &DistanceMatrix) -> Result<SubClustering> {
    let mut labels = sc.labels.clone();
    let mut pending: Vec<usize> = sc.unassigned().collect();
    if pending.is_empty() {
        return Ok(sc.clone());
    }
    let labelled: Vec<usize> = (0..labels.len()).filter(|&p| labels[p] != 0).collect();
    if labelled.is_empty() {
        return Err(Error::InvalidParameter("no labelled point to attach outliers to".into()));
    }

    // (distance, source) of the nearest labelled point for each pending point
    let mut nearest: Vec<(f64, usize)> = pending
        .iter()
        .map(|&u| {
            labelled
                .iter()
                .map(|&p| (dm.get(u, p), p))
                .min_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)))
                .unwrap()
        })
        .collect();

    while !pending.is_empty() {
        let pick = (0..pending.len())
            .min_by(|&a, &b| {
                nearest[a].0.total_cmp(&nearest[b].0).then(pending[a].cmp(&pending[b]))
            })
            .unwrap();
        let u = pending.swap_remove(pick);
        let (_, src) = nearest.swap_remove(pick);
        labels[u] = labels[src];
        for (v, best) in pending.iter().zip(nearest.iter_mut()) {
            let d = dm.get(*v, u);
            if d < best.0 || (d == best.0 && u < best.1) {
                *best = (d, u);
            }
        }
    }

    Ok(SubClustering { clusters: members_of(&labels, sc.len()), labels, stats: sc.stats.clone() })
}
