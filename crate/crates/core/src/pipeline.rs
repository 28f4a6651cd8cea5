//! End-to-end clustering: normalize, measure, search neighbors, find density
//! peaks, grow sub-clusters, attach outliers and fuse.

use crate::dataset::{minmax_normalize, pairwise_distances_with, Dataset, DistanceMatrix, DistanceOptions};
use crate::density::{compute_density, compute_representatives, DensityProfile, KMode};
use crate::error::{Error, Result};
use crate::fusion::{build_fusion_plan, fuse, FusionPlan};
use crate::neighbors::{nan_search, NeighborIndex};
use crate::partition::{assign_outliers, divide_subclusters, EnqueueMode, SubClustering};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Config {
    /// Number of clusters to return.
    pub clusters: usize,
    /// Min-max scale every dimension to `[0, 1]` first.
    pub normalize: bool,
    pub k_mode: KMode,
    pub enqueue_mode: EnqueueMode,
    pub distance: DistanceOptions,
}

impl Config {
    pub fn new(clusters: usize) -> Self {
        Self {
            clusters,
            normalize: true,
            k_mode: KMode::default(),
            enqueue_mode: EnqueueMode::default(),
            distance: DistanceOptions::default(),
        }
    }

    pub fn normalize(mut self, yes: bool) -> Self {
        self.normalize = yes;
        self
    }

    pub fn k_mode(mut self, mode: KMode) -> Self {
        self.k_mode = mode;
        self
    }

    pub fn enqueue_mode(mut self, mode: EnqueueMode) -> Self {
        self.enqueue_mode = mode;
        self
    }

    pub fn parallel(mut self, yes: bool) -> Self {
        self.distance.parallel = yes;
        self
    }

    pub fn max_points(mut self, cap: usize) -> Self {
        self.distance.max_points = cap;
        self
    }
}

/// Every intermediate product of a run, plus the final labels.
#[derive(Debug, Clone)]
pub struct Clustering {
    pub distances: DistanceMatrix,
    pub neighbors: NeighborIndex,
    /// Neighborhood size used for density and sub-cluster growth.
    pub k: usize,
    pub profile: DensityProfile,
    /// Sub-clusters straight out of peak growth, outliers still unlabelled.
    pub grown: SubClustering,
    /// Sub-clusters after outlier assignment.
    pub subclusters: SubClustering,
    pub plan: FusionPlan,
    /// Final labels in `1..=clusters`, one per input row.
    pub labels: Vec<usize>,
    pub merges: usize,
}

impl Clustering {
    pub fn lambda(&self) -> usize {
        self.neighbors.lambda()
    }

    pub fn peak_count(&self) -> usize {
        self.profile.peaks.len()
    }

    pub fn subcluster_count(&self) -> usize {
        self.subclusters.len()
    }

    pub fn outlier_count(&self) -> usize {
        self.grown.unassigned().count()
    }
}

/// Runs the full pipeline. Ground-truth labels on `ds` are ignored.
pub fn cluster(ds: &Dataset, cfg: &Config) -> Result<Clustering> {
    if cfg.clusters == 0 {
        return Err(Error::InvalidParameter("cluster count must be at least 1".into()));
    }
    if ds.len() > cfg.distance.max_points {
        return Err(Error::TooLarge { n: ds.len(), cap: cfg.distance.max_points });
    }
    let prepared;
    let data = if cfg.normalize {
        prepared = minmax_normalize(ds);
        &prepared
    } else {
        ds
    };
    let distances = pairwise_distances_with(data, cfg.distance)?;
    cluster_distances(distances, cfg)
}

/// Runs everything after the distance matrix.
pub fn cluster_distances(distances: DistanceMatrix, cfg: &Config) -> Result<Clustering> {
    let neighbors = nan_search(&distances)?;
    let k = cfg.k_mode.resolve(&neighbors);
    let neighbors = neighbors.with_depth(&distances, k);
    let rho = compute_density(&neighbors, &distances, k);
    let profile = compute_representatives(&neighbors, &rho, k);
    let grown = divide_subclusters(&neighbors, &profile, k, cfg.enqueue_mode);
    log::debug!(
        "λ = {}, k = {k}, {} peaks, {} sub-clusters, {} outliers",
        neighbors.lambda(),
        profile.peaks.len(),
        grown.len(),
        grown.unassigned().count()
    );
    let subclusters = assign_outliers(&grown, &distances)?;
    let plan = build_fusion_plan(&subclusters, &neighbors, &distances, cfg.clusters)?;
    let fused = fuse(&subclusters, &plan);
    Ok(Clustering {
        distances,
        neighbors,
        k,
        profile,
        grown,
        subclusters,
        plan,
        labels: fused.labels,
        merges: fused.merges,
    })
}
