//! Brute-force reference implementations written straight from the
//! definitions, without sharing code with the library.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use kfuse::Dataset;
use rand::Rng;
use rand_distr::{Distribution, Normal};

pub fn euclid(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

pub fn dist_table(ds: &Dataset) -> Vec<Vec<f64>> {
    let n = ds.len();
    (0..n).map(|i| (0..n).map(|j| euclid(ds.point(i), ds.point(j))).collect()).collect()
}

/// The `r` nearest neighbors of `p` by a full sort on (distance, index).
pub fn r_nearest(d: &[Vec<f64>], p: usize, r: usize) -> Vec<usize> {
    let mut others: Vec<usize> = (0..d.len()).filter(|&q| q != p).collect();
    others.sort_by(|&a, &b| d[p][a].total_cmp(&d[p][b]).then(a.cmp(&b)));
    others.truncate(r);
    others
}

pub struct NanOracle {
    pub lambda: usize,
    pub nn: Vec<Vec<usize>>,
    pub nb: Vec<usize>,
    pub trace: Vec<usize>,
}

/// Recomputes reverse-neighbor counts from scratch at every radius `r`.
pub fn nan_oracle(d: &[Vec<f64>]) -> NanOracle {
    let n = d.len();
    let mut prev = n;
    let mut trace = Vec::new();
    let mut r = 1;
    loop {
        let lists: Vec<Vec<usize>> = (0..n).map(|p| r_nearest(d, p, r)).collect();
        let nb: Vec<usize> =
            (0..n).map(|q| (0..n).filter(|&p| lists[p].contains(&q)).count()).collect();
        let num = nb.iter().filter(|&&c| c == 0).count();
        trace.push(num);
        if num == prev || num == 0 || r == n - 1 {
            return NanOracle { lambda: r, nn: lists, nb, trace };
        }
        prev = num;
        r += 1;
    }
}

pub fn natural_neighbors_oracle(o: &NanOracle, p: usize) -> Vec<usize> {
    (0..o.nn.len()).filter(|&q| o.nn[p].contains(&q) && o.nn[q].contains(&p)).collect()
}

/// Pair counts (same-same, same-diff, diff-same, diff-diff) over all pairs.
pub fn pair_counts(t: &[usize], p: &[usize]) -> (u64, u64, u64, u64) {
    let (mut a, mut b, mut c, mut dd) = (0, 0, 0, 0);
    for i in 0..t.len() {
        for j in i + 1..t.len() {
            match (t[i] == t[j], p[i] == p[j]) {
                (true, true) => a += 1,
                (true, false) => b += 1,
                (false, true) => c += 1,
                (false, false) => dd += 1,
            }
        }
    }
    (a, b, c, dd)
}

pub fn fmi_oracle(t: &[usize], p: &[usize]) -> f64 {
    let (a, b, c, _) = pair_counts(t, p);
    if a + b == 0 || a + c == 0 {
        return 0.0;
    }
    a as f64 / (((a + b) * (a + c)) as f64).sqrt()
}

pub fn ari_oracle(t: &[usize], p: &[usize]) -> f64 {
    let (a, b, c, d) = pair_counts(t, p);
    let (a, b, c, d) = (a as i128, b as i128, c as i128, d as i128);
    let den = (a + b) * (b + d) + (a + c) * (c + d);
    if den == 0 {
        return 1.0;
    }
    2.0 * (a * d - b * c) as f64 / den as f64
}

fn entropy<T: Ord + Copy>(labels: &[T]) -> f64 {
    let n = labels.len() as f64;
    let mut counts: BTreeMap<T, usize> = BTreeMap::new();
    for &l in labels {
        *counts.entry(l).or_default() += 1;
    }
    counts.values().map(|&c| c as f64 / n).map(|q| -q * q.ln()).sum()
}

pub fn nmi_oracle(t: &[usize], p: &[usize]) -> f64 {
    let (ht, hp) = (entropy(t), entropy(p));
    if ht == 0.0 && hp == 0.0 {
        return 1.0;
    }
    if ht == 0.0 || hp == 0.0 {
        return 0.0;
    }
    // I(T; P) = H(T) + H(P) - H(T, P)
    let joint: Vec<(usize, usize)> = t.iter().copied().zip(p.iter().copied()).collect();
    let mi = ht + hp - entropy(&joint);
    (mi / (ht * hp).sqrt()).clamp(0.0, 1.0)
}

/// Union of every member with its `lambda` nearest neighbors.
pub fn augmented(d: &[Vec<f64>], members: &[usize], lambda: usize) -> BTreeSet<usize> {
    let mut out: BTreeSet<usize> = members.iter().copied().collect();
    for &p in members {
        out.extend(r_nearest(d, p, lambda));
    }
    out
}

pub fn single_link(d: &[Vec<f64>], a: &[usize], b: &[usize]) -> f64 {
    let mut best = f64::INFINITY;
    for &p in a {
        for &q in b {
            best = best.min(d[p][q]);
        }
    }
    best
}

pub fn mean_var(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    (mean, values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n)
}

/// Fusion index written out in one expression per term.
pub fn fusion_index(
    d: &[Vec<f64>],
    lambda: usize,
    rho: &[f64],
    a: &[usize],
    b: &[usize],
) -> (f64, usize, f64) {
    let ads = augmented(d, a, lambda).intersection(&augmented(d, b, lambda)).count();
    let dc = single_link(d, a, b);
    let con = (ads as f64 + 1.0) * (-dc).exp() / a.len().min(b.len()) as f64;
    let ra: Vec<f64> = a.iter().map(|&p| rho[p]).collect();
    let rb: Vec<f64> = b.iter().map(|&p| rho[p]).collect();
    let ((ma, va), (mb, vb)) = (mean_var(&ra), mean_var(&rb));
    let var_ratio = if va.max(vb) == 0.0 { 1.0 } else { va.min(vb) / va.max(vb) };
    let sim = ma.min(mb) / ma.max(mb) * (1.0 + var_ratio);
    (con * sim, ads, dc)
}

/// A few Gaussian blobs plus uniform noise in `dim` dimensions.
pub fn fuzz_dataset(rng: &mut impl Rng, n: usize, dim: usize) -> Dataset {
    let blobs = rng.gen_range(1..=4);
    let centers: Vec<Vec<f64>> =
        (0..blobs).map(|_| (0..dim).map(|_| rng.gen_range(-10.0..10.0)).collect()).collect();
    let spread = Normal::new(0.0, rng.gen_range(0.3..2.0)).unwrap();
    let rows: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            if i % 7 == 6 {
                (0..dim).map(|_| rng.gen_range(-12.0..12.0)).collect()
            } else {
                let c = &centers[i % blobs];
                c.iter().map(|x| x + spread.sample(rng)).collect()
            }
        })
        .collect();
    Dataset::from_rows("fuzz", &rows).unwrap()
}

/// Uniform points on a small integer grid, so distance ties are common.
pub fn grid_dataset(rng: &mut impl Rng, n: usize, dim: usize) -> Dataset {
    let rows: Vec<Vec<f64>> =
        (0..n).map(|_| (0..dim).map(|_| rng.gen_range(0..5) as f64).collect()).collect();
    Dataset::from_rows("grid", &rows).unwrap()
}

pub fn random_labels(rng: &mut impl Rng, n: usize) -> Vec<usize> {
    let k = rng.gen_range(1..=n.max(1));
    (0..n).map(|_| rng.gen_range(0..k)).collect()
}

/// True when `coarse` never splits a group of `fine`.
pub fn is_coarsening(fine: &[usize], coarse: &[usize]) -> bool {
    let mut seen: BTreeMap<usize, usize> = BTreeMap::new();
    fine.iter().zip(coarse).all(|(&f, &c)| *seen.entry(f).or_insert(c) == c)
}

/// True when the two labelings induce the same partition.
pub fn same_partition(a: &[usize], b: &[usize]) -> bool {
    a.len() == b.len() && is_coarsening(a, b) && is_coarsening(b, a)
}

pub fn assignments_text(labels: &[usize]) -> String {
    labels.iter().map(|l| format!("{l}\n")).collect()
}
