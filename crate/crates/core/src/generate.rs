//! Seeded synthetic datasets with ground-truth labels.

use std::f64::consts::{PI, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::dataset::Dataset;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Shape {
    /// `k` isotropic Gaussian blobs with centers on a circle of radius 10.
    Blobs { k: usize, n: usize, spread: f64 },
    /// `k` concentric rings of radius `1..=k`, points proportional to radius,
    /// evenly spaced in angle with Gaussian radial jitter.
    Rings { k: usize, n: usize, noise: f64 },
    /// Two interleaving half circles.
    Moons { n: usize, noise: f64 },
    /// `n` collinear points at the triangular numbers `0, 1, 3, 6, …`.
    Line { n: usize },
}

fn split(n: usize, weights: &[f64]) -> Vec<usize> {
    let total: f64 = weights.iter().sum();
    let mut counts: Vec<usize> =
        weights.iter().map(|w| (n as f64 * w / total).floor() as usize).collect();
    let mut rest = n - counts.iter().sum::<usize>();
    let len = counts.len();
    let mut i = 0;
    while rest > 0 {
        counts[i % len] += 1;
        rest -= 1;
        i += 1;
    }
    counts
}

fn normal(sd: f64) -> Result<Normal<f64>> {
    Normal::new(0.0, sd).map_err(|e| Error::InvalidParameter(e.to_string()))
}

/// Generates a labelled dataset. Identical arguments give identical output.
pub fn generate(shape: Shape, seed: u64) -> Result<Dataset> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows: Vec<Vec<f64>> = Vec::new();
    let mut labels: Vec<usize> = Vec::new();
    let bad = |msg: &str| Err(Error::InvalidParameter(msg.into()));

    match shape {
        Shape::Blobs { k, n, spread } => {
            if k == 0 || n < k {
                return bad("blobs need k >= 1 and n >= k");
            }
            if !(spread.is_finite() && spread >= 0.0) {
                return bad("spread must be finite and non-negative");
            }
            let noise = normal(spread)?;
            for (c, count) in split(n, &vec![1.0; k]).into_iter().enumerate() {
                let angle = TAU * c as f64 / k as f64;
                let (cx, cy) = (10.0 * angle.cos(), 10.0 * angle.sin());
                for _ in 0..count {
                    rows.push(vec![cx + noise.sample(&mut rng), cy + noise.sample(&mut rng)]);
                    labels.push(c);
                }
            }
        }
        Shape::Rings { k, n, noise } => {
            if k == 0 || n < k {
                return bad("rings need k >= 1 and n >= k");
            }
            if !(noise.is_finite() && noise >= 0.0) {
                return bad("noise must be finite and non-negative");
            }
            let jitter = normal(noise)?;
            let weights: Vec<f64> = (1..=k).map(|r| r as f64).collect();
            for (c, count) in split(n, &weights).into_iter().enumerate() {
                let radius = (c + 1) as f64;
                let phase = rng.gen_range(0.0..TAU);
                for i in 0..count {
                    let t = phase + TAU * i as f64 / count as f64;
                    let r = radius + jitter.sample(&mut rng);
                    rows.push(vec![r * t.cos(), r * t.sin()]);
                    labels.push(c);
                }
            }
        }
        Shape::Moons { n, noise } => {
            if n < 2 {
                return bad("moons need n >= 2");
            }
            if !(noise.is_finite() && noise >= 0.0) {
                return bad("noise must be finite and non-negative");
            }
            let jitter = normal(noise)?;
            for (c, count) in split(n, &[1.0, 1.0]).into_iter().enumerate() {
                for i in 0..count {
                    let t = PI * i as f64 / (count.max(2) - 1) as f64;
                    let (x, y) = if c == 0 { (t.cos(), t.sin()) } else { (1.0 - t.cos(), 0.5 - t.sin()) };
                    rows.push(vec![x + jitter.sample(&mut rng), y + jitter.sample(&mut rng)]);
                    labels.push(c);
                }
            }
        }
        Shape::Line { n } => {
            if n == 0 {
                return bad("line needs n >= 1");
            }
            for i in 0..n {
                rows.push(vec![(i * (i + 1) / 2) as f64]);
                labels.push(0);
            }
        }
    }

    let name = match shape {
        Shape::Blobs { .. } => "blobs",
        Shape::Rings { .. } => "rings",
        Shape::Moons { .. } => "moons",
        Shape::Line { .. } => "line",
    };
    Dataset::from_rows(name, &rows)?.with_labels(&labels)
}
