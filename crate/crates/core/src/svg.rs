//! Deterministic SVG scatter plots of 2-D labelled data.

use std::fmt::Write as _;

use crate::dataset::Dataset;
use crate::error::{Error, Result};

/// Fill colors, cycled by label id.
pub const PALETTE: [&str; 20] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
    "#bcbd22", "#17becf", "#aec7e8", "#ffbb78", "#98df8a", "#ff9896", "#c5b0d5", "#c49c94",
    "#f7b6d2", "#c7c7c7", "#dbdb8d", "#9edae5",
];

const SIZE: f64 = 480.0;
const MARGIN: f64 = 16.0;
const RADIUS: f64 = 3.0;

/// Renders one circle per point, colored by `labels`.
///
/// Labels are compacted by first appearance before picking colors. The y axis
/// points up.
pub fn render_scatter(ds: &Dataset, labels: &[usize]) -> Result<String> {
    if ds.dim() != 2 {
        return Err(Error::Dimension { expected: 2, actual: ds.dim() });
    }
    if labels.len() != ds.len() {
        return Err(Error::LengthMismatch { left: ds.len(), right: labels.len() });
    }
    let (mut xmin, mut xmax, mut ymin, mut ymax) =
        (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for p in ds.points() {
        xmin = xmin.min(p[0]);
        xmax = xmax.max(p[0]);
        ymin = ymin.min(p[1]);
        ymax = ymax.max(p[1]);
    }
    let span = (xmax - xmin).max(ymax - ymin);
    let scale = if span > 0.0 { (SIZE - 2.0 * MARGIN) / span } else { 1.0 };

    let mut color_of = Vec::<usize>::new();
    let total = SIZE as u32;
    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{total}" height="{total}" viewBox="0 0 {total} {total}">"#
    )
    .unwrap();
    writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#).unwrap();
    for (p, &label) in ds.points().zip(labels) {
        let slot = match color_of.iter().position(|&l| l == label) {
            Some(s) => s,
            None => {
                color_of.push(label);
                color_of.len() - 1
            }
        };
        let cx = MARGIN + (p[0] - xmin) * scale;
        let cy = SIZE - MARGIN - (p[1] - ymin) * scale;
        writeln!(
            out,
            r#"<circle cx="{cx:.2}" cy="{cy:.2}" r="{RADIUS}" fill="{}"/>"#,
            PALETTE[slot % PALETTE.len()]
        )
        .unwrap();
    }
    out.push_str("</svg>\n");
    Ok(out)
}
