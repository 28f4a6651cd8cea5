/*!
Density-based agglomerative clustering driven by natural neighbors.

The algorithm has two stages and a single parameter, the number of clusters
wanted at the end:

1. **Partition.** A parameter-free neighbor search finds the natural
   characteristic `λ` and each point's reverse-neighbor count. These give a
   per-point density. Local density peaks then grow into sub-clusters through
   mutual-neighbor links. Leftover outliers are attached to the nearest
   labelled point.
2. **Fuse.** Every pair of sub-clusters is scored by a fusion index. The index
   multiplies boundary connectivity (shared neighbors and single-link gap) by
   density similarity (mean and variance of member densities). Pairs are
   merged best-first until the requested number of clusters remains.

The crate also ships the validity indices (FMI, ARI, NMI) and the
Friedman/Nemenyi ranking machinery used to compare clusterers across datasets.

# Example

```
use kfuse::{cluster, Config, Dataset};

let mut rows = Vec::new();
for &(cx, cy) in &[(0.0, 0.0), (8.0, 8.0)] {
    for i in 0..10 {
        let a = i as f64;
        rows.push([cx + 0.3 * a.cos(), cy + 0.3 * a.sin()]);
    }
}
let ds = Dataset::from_rows("two-blobs", &rows).unwrap();
let out = cluster(&ds, &Config::new(2)).unwrap();

assert_eq!(out.labels.len(), 20);
assert!(out.labels[..10].iter().all(|&l| l == out.labels[0]));
assert!(out.labels[10..].iter().all(|&l| l == out.labels[10]));
assert_ne!(out.labels[0], out.labels[10]);
```

A narrative guide with runnable snippets lives in the `book/` directory at the
repository root.
*/

pub mod dataset;
pub mod density;
pub mod error;
pub mod fusion;
pub mod generate;
pub mod metrics;
pub mod neighbors;
pub mod partition;
pub mod pipeline;
pub mod ranking;
pub mod svg;
mod union_find;

// The guide's code blocks run as doctests so the book cannot drift from the API.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/natural-neighbors.md")]
    mod natural_neighbors {}
    #[doc = include_str!("../../../book/src/density.md")]
    mod density {}
    #[doc = include_str!("../../../book/src/subclusters.md")]
    mod subclusters {}
    #[doc = include_str!("../../../book/src/fusion.md")]
    mod fusion {}
    #[doc = include_str!("../../../book/src/evaluation.md")]
    mod evaluation {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}

pub use dataset::{load_csv, minmax_normalize, pairwise_distances, Dataset, DistanceMatrix, Metric};
pub use density::{DensityProfile, KMode};
pub use error::{Error, Result};
pub use fusion::FusionPlan;
pub use metrics::{ari, fmi, nmi, Scores};
pub use neighbors::{nan_search, natural_neighbors, NeighborIndex};
pub use partition::{EnqueueMode, SubClustering};
pub use pipeline::{cluster, Clustering, Config};
pub use ranking::{friedman_statistic, nemenyi_cd, RankTable};
