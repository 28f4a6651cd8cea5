//! External validity indices: Fowlkes–Mallows, adjusted Rand and normalized
//! mutual information.
//!
//! All three are computed from a contingency table, so any label values work
//! and the scores are invariant under relabeling of either argument.

use std::collections::HashMap;

use crate::error::{Error, Result};

/// Cross-tabulation of two labelings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContingencyTable {
    /// `counts[r][c]`: points with true class `r` and predicted cluster `c`.
    pub counts: Vec<Vec<u64>>,
    pub row_sums: Vec<u64>,
    pub col_sums: Vec<u64>,
    pub n: u64,
}

impl ContingencyTable {
    pub fn new(truth: &[usize], pred: &[usize]) -> Result<Self> {
        if truth.len() != pred.len() {
            return Err(Error::LengthMismatch { left: truth.len(), right: pred.len() });
        }
        let rows = dense_ids(truth);
        let cols = dense_ids(pred);
        let r = rows.iter().copied().max().map_or(0, |m| m + 1);
        let c = cols.iter().copied().max().map_or(0, |m| m + 1);
        let mut counts = vec![vec![0u64; c]; r];
        for (&a, &b) in rows.iter().zip(&cols) {
            counts[a][b] += 1;
        }
        let row_sums = counts.iter().map(|row| row.iter().sum()).collect();
        let col_sums = (0..c).map(|j| counts.iter().map(|row| row[j]).sum()).collect();
        Ok(Self { counts, row_sums, col_sums, n: truth.len() as u64 })
    }

    fn cells(&self) -> impl Iterator<Item = u64> + '_ {
        self.counts.iter().flatten().copied()
    }
}

fn dense_ids(labels: &[usize]) -> Vec<usize> {
    let mut ids = HashMap::new();
    labels
        .iter()
        .map(|&l| {
            let next = ids.len();
            *ids.entry(l).or_insert(next)
        })
        .collect()
}

fn pairs(k: u64) -> f64 {
    (k * k.saturating_sub(1) / 2) as f64
}

/// Fowlkes–Mallows index `TP / sqrt((TP + FP)(TP + FN))`; 0 if either factor is 0.
pub fn fmi(truth: &[usize], pred: &[usize]) -> Result<f64> {
    let t = ContingencyTable::new(truth, pred)?;
    let tp: f64 = t.cells().map(pairs).sum();
    let same_pred: f64 = t.col_sums.iter().copied().map(pairs).sum();
    let same_true: f64 = t.row_sums.iter().copied().map(pairs).sum();
    if same_pred == 0.0 || same_true == 0.0 {
        return Ok(0.0);
    }
    Ok(tp / (same_pred * same_true).sqrt())
}

/// Hubert–Arabie adjusted Rand index.
///
/// When the maximum index equals its expectation (both labelings all-singleton
/// or both a single cluster) the score is 1.
pub fn ari(truth: &[usize], pred: &[usize]) -> Result<f64> {
    let t = ContingencyTable::new(truth, pred)?;
    let index: f64 = t.cells().map(pairs).sum();
    let a: f64 = t.row_sums.iter().copied().map(pairs).sum();
    let b: f64 = t.col_sums.iter().copied().map(pairs).sum();
    let total = pairs(t.n);
    if total == 0.0 {
        return Ok(1.0);
    }
    let expected = a * b / total;
    let max = 0.5 * (a + b);
    if max == expected {
        return Ok(1.0);
    }
    Ok((index - expected) / (max - expected))
}

/// How mutual information is normalized in [`nmi_with`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum NmiNormalization {
    /// `I / sqrt(H(U) H(V))`
    #[default]
    Geometric,
    /// `2 I / (H(U) + H(V))`
    Arithmetic,
}

/// Normalized mutual information with geometric-mean normalization.
pub fn nmi(truth: &[usize], pred: &[usize]) -> Result<f64> {
    nmi_with(truth, pred, NmiNormalization::Geometric)
}

/// Normalized mutual information (natural log). Two constant labelings score 1;
/// exactly one constant labeling scores 0.
pub fn nmi_with(truth: &[usize], pred: &[usize], norm: NmiNormalization) -> Result<f64> {
    let t = ContingencyTable::new(truth, pred)?;
    let n = t.n as f64;
    let entropy = |sums: &[u64]| -> f64 {
        sums.iter()
            .filter(|&&c| c > 0)
            .map(|&c| {
                let p = c as f64 / n;
                -p * p.ln()
            })
            .sum()
    };
    let hu = entropy(&t.row_sums);
    let hv = entropy(&t.col_sums);
    if hu == 0.0 && hv == 0.0 {
        return Ok(1.0);
    }
    if hu == 0.0 || hv == 0.0 {
        return Ok(0.0);
    }
    let mut mi = 0.0;
    for (r, row) in t.counts.iter().enumerate() {
        for (c, &nij) in row.iter().enumerate() {
            if nij > 0 {
                let nij = nij as f64;
                mi += nij / n * (n * nij / (t.row_sums[r] as f64 * t.col_sums[c] as f64)).ln();
            }
        }
    }
    let denom = match norm {
        NmiNormalization::Geometric => (hu * hv).sqrt(),
        NmiNormalization::Arithmetic => 0.5 * (hu + hv),
    };
    Ok((mi / denom).clamp(0.0, 1.0))
}

/// The three indices for one prediction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scores {
    pub fmi: f64,
    pub ari: f64,
    pub nmi: f64,
}

pub fn score_all(truth: &[usize], pred: &[usize]) -> Result<Scores> {
    Ok(Scores { fmi: fmi(truth, pred)?, ari: ari(truth, pred)?, nmi: nmi(truth, pred)? })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identical_labelings() {
        let l = [0, 0, 1, 1, 2];
        assert_eq!(fmi(&l, &l).unwrap(), 1.0);
        assert_eq!(ari(&l, &l).unwrap(), 1.0);
        assert!((nmi(&l, &l).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn total_pair_disagreement() {
        assert_eq!(fmi(&[0, 0, 1, 1], &[0, 1, 0, 1]).unwrap(), 0.0);
    }

    #[test]
    fn single_cluster_prediction_is_chance() {
        assert_eq!(ari(&[0, 0, 1, 1, 2], &[7, 7, 7, 7, 7]).unwrap(), 0.0);
    }

    #[test]
    fn independent_blocks_have_no_information() {
        assert_eq!(nmi(&[0, 0, 1, 1], &[0, 1, 0, 1]).unwrap(), 0.0);
    }

    #[test]
    fn constant_labelings() {
        assert_eq!(nmi(&[3, 3, 3], &[1, 1, 1]).unwrap(), 1.0);
        assert_eq!(nmi(&[3, 3, 3], &[1, 2, 1]).unwrap(), 0.0);
        assert_eq!(ari(&[0, 1, 2], &[5, 6, 7]).unwrap(), 1.0);
    }

    #[test]
    fn length_mismatch() {
        assert!(matches!(fmi(&[0, 1], &[0]), Err(Error::LengthMismatch { left: 2, right: 1 })));
        assert!(ari(&[0], &[0, 1]).is_err());
        assert!(nmi(&[0], &[]).is_err());
    }

    #[test]
    fn arithmetic_normalization_differs_when_entropies_differ() {
        let (t, p) = ([0, 0, 1, 1, 2, 2], [0, 0, 0, 1, 1, 1]);
        let g = nmi_with(&t, &p, NmiNormalization::Geometric).unwrap();
        let a = nmi_with(&t, &p, NmiNormalization::Arithmetic).unwrap();
        assert!(a < g);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn labelings() -> impl Strategy<Value = (Vec<usize>, Vec<usize>)> {
            (2usize..30).prop_flat_map(|n| {
                (prop::collection::vec(0usize..4, n), prop::collection::vec(0usize..5, n))
            })
        }

        proptest! {
            #[test]
            fn symmetric_and_bounded((t, p) in labelings()) {
                let a = score_all(&t, &p).unwrap();
                let b = score_all(&p, &t).unwrap();
                prop_assert!((a.fmi - b.fmi).abs() < 1e-12);
                prop_assert!((a.ari - b.ari).abs() < 1e-12);
                prop_assert!((a.nmi - b.nmi).abs() < 1e-12);
                prop_assert!((0.0..=1.0).contains(&a.fmi));
                prop_assert!((0.0..=1.0).contains(&a.nmi));
                prop_assert!(a.ari <= 1.0 + 1e-12);
            }

            #[test]
            fn relabeling_invariant((t, p) in labelings(), shift in 1usize..50) {
                let perm: Vec<usize> = p.iter().map(|&l| (4 - l) * 13 + shift).collect();
                let a = score_all(&t, &p).unwrap();
                let b = score_all(&t, &perm).unwrap();
                prop_assert!((a.fmi - b.fmi).abs() < 1e-12);
                prop_assert!((a.ari - b.ari).abs() < 1e-12);
                prop_assert!((a.nmi - b.nmi).abs() < 1e-12);
            }

            #[test]
            fn self_agreement_is_perfect((t, _) in labelings()) {
                prop_assert_eq!(ari(&t, &t).unwrap(), 1.0);
            }
        }
    }
}
