//! Friedman rank statistic and the Nemenyi critical difference for comparing
//! several algorithms over several datasets.

use crate::error::{Error, Result};

/// Scores of `M` algorithms on `N` datasets, ranked per dataset.
///
/// Higher scores get lower (better) ranks; ties share the average rank.
#[derive(Debug, Clone, PartialEq)]
pub struct RankTable {
    pub algorithms: Vec<String>,
    pub datasets: Vec<String>,
    pub scores: Vec<Vec<f64>>,
    pub ranks: Vec<Vec<f64>>,
    pub mean_ranks: Vec<f64>,
}

impl RankTable {
    pub fn new(algorithms: Vec<String>, datasets: Vec<String>, scores: Vec<Vec<f64>>) -> Result<Self> {
        let m = algorithms.len();
        if scores.len() != datasets.len() {
            return Err(Error::LengthMismatch { left: datasets.len(), right: scores.len() });
        }
        if let Some(row) = scores.iter().find(|r| r.len() != m) {
            return Err(Error::LengthMismatch { left: m, right: row.len() });
        }
        if scores.iter().flatten().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter("scores must be finite".into()));
        }
        let ranks: Vec<Vec<f64>> = scores.iter().map(|row| rank_descending(row)).collect();
        let n = ranks.len().max(1) as f64;
        let mean_ranks = (0..m).map(|j| ranks.iter().map(|r| r[j]).sum::<f64>() / n).collect();
        Ok(Self { algorithms, datasets, scores, ranks, mean_ranks })
    }

    /// Parses a score matrix: a header of algorithm names (first cell ignored),
    /// then one row per dataset whose first cell names the dataset.
    pub fn from_csv_str(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim_end_matches('\r')))
            .filter(|(_, l)| !l.trim().is_empty());
        let (_, header) = lines.next().ok_or(Error::EmptyDataset)?;
        let algorithms: Vec<String> =
            header.split(',').skip(1).map(|s| s.trim().to_string()).collect();
        if algorithms.is_empty() {
            return Err(Error::Parse { line: 1, message: "header names no algorithms".into() });
        }
        let mut datasets = Vec::new();
        let mut scores = Vec::new();
        for (line, row) in lines {
            let mut fields = row.split(',').map(str::trim);
            datasets.push(fields.next().unwrap_or_default().to_string());
            let vals = fields
                .map(|f| {
                    f.parse::<f64>().map_err(|_| Error::Parse {
                        line,
                        message: format!("cannot parse {f:?} as a score"),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            if vals.len() != algorithms.len() {
                return Err(Error::Parse {
                    line,
                    message: format!("expected {} scores, found {}", algorithms.len(), vals.len()),
                });
            }
            scores.push(vals);
        }
        Self::new(algorithms, datasets, scores)
    }

    /// Number of algorithms `M`.
    pub fn algorithm_count(&self) -> usize {
        self.algorithms.len()
    }

    /// Number of datasets `N`.
    pub fn dataset_count(&self) -> usize {
        self.datasets.len()
    }
}

/// 1-based ranks with the highest value first; ties get their average rank.
pub fn rank_descending(values: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[b].total_cmp(&values[a]));
    let mut ranks = vec![0.0; values.len()];
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && values[order[end]] == values[order[start]] {
            end += 1;
        }
        // positions start..end hold ranks start+1 ..= end
        let avg = (start + 1 + end) as f64 / 2.0;
        for &i in &order[start..end] {
            ranks[i] = avg;
        }
        start = end;
    }
    ranks
}

/// Friedman chi-square statistic and its degrees of freedom `M - 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Friedman {
    pub chi_square: f64,
    pub df: usize,
}

pub fn friedman_statistic(rt: &RankTable) -> Result<Friedman> {
    let (m, n) = (rt.algorithm_count(), rt.dataset_count());
    if m < 2 || n < 2 {
        return Err(Error::InvalidParameter(format!(
            "Friedman test needs at least 2 algorithms and 2 datasets, got {m} and {n}"
        )));
    }
    let (mf, nf) = (m as f64, n as f64);
    let sum_sq: f64 = rt.mean_ranks.iter().map(|r| r * r).sum();
    let chi_square = 12.0 * nf / (mf * (mf + 1.0)) * sum_sq - 3.0 * nf * (mf + 1.0);
    Ok(Friedman { chi_square, df: m - 1 })
}

/// Nemenyi critical difference `q_α · sqrt(M(M+1) / 6N)`.
pub fn nemenyi_cd(algorithms: usize, datasets: usize, q_alpha: f64) -> f64 {
    let (m, n) = (algorithms as f64, datasets as f64);
    q_alpha * (m * (m + 1.0) / (6.0 * n)).sqrt()
}

/// Two-tailed Nemenyi `q_α` at α = 0.05 for 2 to 20 algorithms.
///
/// These are studentized-range quantiles at infinite degrees of freedom
/// divided by `√2`.
const Q_ALPHA_005: [f64; 19] = [
    1.960, 2.343, 2.569, 2.728, 2.850, 2.949, 3.031, 3.102, 3.164, 3.219, 3.268, 3.313, 3.354,
    3.391, 3.426, 3.458, 3.489, 3.517, 3.544,
];

/// Built-in `q_α` for α = 0.05, or `None` outside 2..=20 algorithms.
pub fn q_alpha_005(algorithms: usize) -> Option<f64> {
    algorithms.checked_sub(2).and_then(|i| Q_ALPHA_005.get(i)).copied()
}

/// Algorithm pairs `(a, b)` whose mean-rank gap exceeds `cd`.
pub fn significant_pairs(rt: &RankTable, cd: f64) -> Vec<(usize, usize, f64)> {
    let m = rt.algorithm_count();
    let mut out = Vec::new();
    for a in 0..m {
        for b in a + 1..m {
            let gap = (rt.mean_ranks[a] - rt.mean_ranks[b]).abs();
            if gap > cd {
                out.push((a, b, gap));
            }
        }
    }
    out
}
