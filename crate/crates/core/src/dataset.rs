//! Point datasets: CSV ingestion, min-max scaling and the dense distance matrix.
//!
//! A [`Dataset`] is an `n × d` row-major matrix of finite coordinates with an
//! optional ground-truth label per row. Labels are remapped to `0..C` in order
//! of first appearance so that `"B","A","B"` and `7,3,7` load identically.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::Path;

use rayon::prelude::*;

use crate::error::{Error, Result};

/// Default upper bound on the number of points accepted for clustering.
///
/// The full `n × n` distance matrix is materialized; 20,000 points already
/// need 3.2 GB of `f64`.
pub const DEFAULT_MAX_POINTS: usize = 20_000;

#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    name: String,
    dim: usize,
    points: Vec<f64>,
    labels: Option<Vec<usize>>,
    label_names: Option<Vec<String>>,
}

impl Dataset {
    /// Builds a dataset from row-major coordinates.
    pub fn new(name: impl Into<String>, dim: usize, points: Vec<f64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidParameter("dimension must be at least 1".into()));
        }
        if points.is_empty() {
            return Err(Error::EmptyDataset);
        }
        if points.len() % dim != 0 {
            return Err(Error::InvalidParameter(format!(
                "{} coordinates do not form rows of width {dim}",
                points.len()
            )));
        }
        if let Some(pos) = points.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { line: pos / dim + 1, column: pos % dim + 1 });
        }
        Ok(Self { name: name.into(), dim, points, labels: None, label_names: None })
    }

    /// Builds a dataset from a slice of rows.
    pub fn from_rows<R: AsRef<[f64]>>(name: impl Into<String>, rows: &[R]) -> Result<Self> {
        let dim = rows.first().map(|r| r.as_ref().len()).ok_or(Error::EmptyDataset)?;
        let mut points = Vec::with_capacity(rows.len() * dim);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != dim {
                return Err(Error::Parse {
                    line: i + 1,
                    message: format!("expected {dim} values, found {}", row.len()),
                });
            }
            points.extend_from_slice(row);
        }
        Self::new(name, dim, points)
    }

    /// Attaches ground-truth labels, remapping them to `0..C` by first appearance.
    pub fn with_labels<S: ToString>(mut self, labels: &[S]) -> Result<Self> {
        if labels.len() != self.len() {
            return Err(Error::LengthMismatch { left: self.len(), right: labels.len() });
        }
        let raw: Vec<String> = labels.iter().map(ToString::to_string).collect();
        let (ids, names) = remap_labels(&raw);
        self.labels = Some(ids);
        self.label_names = Some(names);
        Ok(self)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Number of points.
    pub fn len(&self) -> usize {
        self.points.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.points[i * self.dim..(i + 1) * self.dim]
    }

    pub fn points(&self) -> impl ExactSizeIterator<Item = &[f64]> + '_ {
        self.points.chunks_exact(self.dim)
    }

    /// Row-major coordinate buffer.
    pub fn as_slice(&self) -> &[f64] {
        &self.points
    }

    /// Ground-truth labels in `0..C`, if the source carried them.
    pub fn labels(&self) -> Option<&[usize]> {
        self.labels.as_deref()
    }

    /// Original label spellings, indexed by remapped label id.
    pub fn label_names(&self) -> Option<&[String]> {
        self.label_names.as_deref()
    }

    /// Drops the ground-truth labels.
    pub fn without_labels(mut self) -> Self {
        self.labels = None;
        self.label_names = None;
        self
    }

    /// Applies `f` to every coordinate, keeping labels.
    pub fn map_points(&self, mut f: impl FnMut(usize, &[f64]) -> Vec<f64>) -> Result<Self> {
        let mut points = Vec::with_capacity(self.points.len());
        for (i, p) in self.points().enumerate() {
            let q = f(i, p);
            if q.len() != self.dim {
                return Err(Error::Dimension { expected: self.dim, actual: q.len() });
            }
            points.extend(q);
        }
        let mut out = Self::new(self.name.clone(), self.dim, points)?;
        out.labels = self.labels.clone();
        out.label_names = self.label_names.clone();
        Ok(out)
    }

    /// Parses CSV text. See [`load_csv`].
    pub fn from_csv_str(name: impl Into<String>, text: &str, has_labels: bool) -> Result<Self> {
        let mut width: Option<usize> = None;
        let mut points = Vec::new();
        let mut raw_labels = Vec::new();
        let mut seen_data = false;

        for (idx, line) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = line.strip_suffix('\r').unwrap_or(line);
            if line.trim().is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split(',').map(str::trim).collect();
            if !seen_data && fields[0].parse::<f64>().is_err() {
                // header row
                seen_data = true;
                continue;
            }
            seen_data = true;

            match width {
                None => width = Some(fields.len()),
                Some(w) if w != fields.len() => {
                    return Err(Error::Parse {
                        line: line_no,
                        message: format!("expected {w} fields, found {}", fields.len()),
                    })
                }
                Some(_) => {}
            }
            let coord_fields = if has_labels {
                if fields.len() < 2 {
                    return Err(Error::Parse {
                        line: line_no,
                        message: "a labelled row needs at least one coordinate and a label".into(),
                    });
                }
                raw_labels.push(fields[fields.len() - 1].to_string());
                &fields[..fields.len() - 1]
            } else {
                &fields[..]
            };
            for (col, field) in coord_fields.iter().enumerate() {
                let v: f64 = field.parse().map_err(|_| Error::Parse {
                    line: line_no,
                    message: format!("column {}: cannot parse {field:?} as a number", col + 1),
                })?;
                if !v.is_finite() {
                    return Err(Error::NonFinite { line: line_no, column: col + 1 });
                }
                points.push(v);
            }
        }

        let Some(w) = width else {
            return Err(Error::EmptyDataset);
        };
        let dim = if has_labels { w - 1 } else { w };
        let ds = Self::new(name, dim, points)?;
        if has_labels {
            ds.with_labels(&raw_labels)
        } else {
            Ok(ds)
        }
    }

    /// Serializes to CSV (no header), appending the label column when present.
    pub fn to_csv_string(&self) -> String {
        let mut out = String::new();
        for (i, p) in self.points().enumerate() {
            for (j, v) in p.iter().enumerate() {
                if j > 0 {
                    out.push(',');
                }
                write!(out, "{v}").unwrap();
            }
            if let Some(labels) = &self.labels {
                write!(out, ",{}", labels[i]).unwrap();
            }
            out.push('\n');
        }
        out
    }
}

/// Remaps arbitrary label spellings to `0..C` in order of first appearance.
pub fn remap_labels<S: AsRef<str>>(raw: &[S]) -> (Vec<usize>, Vec<String>) {
    let mut ids = HashMap::new();
    let mut names = Vec::new();
    let mapped = raw
        .iter()
        .map(|s| {
            let s = s.as_ref();
            *ids.entry(s.to_string()).or_insert_with(|| {
                names.push(s.to_string());
                names.len() - 1
            })
        })
        .collect();
    (mapped, names)
}

/// Loads a comma-separated dataset.
///
/// A first row whose leading field is not numeric is treated as a header.
/// With `has_labels`, the last column is the ground-truth class.
pub fn load_csv(path: impl AsRef<Path>, has_labels: bool) -> Result<Dataset> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)
        .map_err(|source| Error::Io { path: path.to_path_buf(), source })?;
    let name = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    Dataset::from_csv_str(name, &text, has_labels)
}

/// Reads a label file: one label per non-empty line, any spelling.
pub fn load_label_file(path: impl AsRef<Path>) -> Result<Vec<usize>> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)
        .map_err(|source| Error::Io { path: path.to_path_buf(), source })?;
    let raw: Vec<&str> =
        text.lines().map(|l| l.trim_end_matches('\r').trim()).filter(|l| !l.is_empty()).collect();
    Ok(remap_labels(&raw).0)
}

/// Rescales every dimension to `[0, 1]` via `(x - min) / (max - min)`.
///
/// Constant dimensions map to 0.
pub fn minmax_normalize(ds: &Dataset) -> Dataset {
    let d = ds.dim();
    let mut lo = vec![f64::INFINITY; d];
    let mut hi = vec![f64::NEG_INFINITY; d];
    for p in ds.points() {
        for (j, &v) in p.iter().enumerate() {
            lo[j] = lo[j].min(v);
            hi[j] = hi[j].max(v);
        }
    }
    let points = ds
        .as_slice()
        .iter()
        .enumerate()
        .map(|(k, &v)| {
            let j = k % d;
            let span = hi[j] - lo[j];
            if span > 0.0 {
                (v - lo[j]) / span
            } else {
                0.0
            }
        })
        .collect();
    Dataset { points, ..ds.clone() }
}

/// Distance function between points.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum Metric {
    #[default]
    Euclidean,
}

impl Metric {
    #[inline]
    pub fn distance(self, a: &[f64], b: &[f64]) -> f64 {
        match self {
            Metric::Euclidean => {
                a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DistanceOptions {
    pub metric: Metric,
    pub max_points: usize,
    /// Fill rows in parallel. Output is bit-identical either way.
    pub parallel: bool,
}

impl Default for DistanceOptions {
    fn default() -> Self {
        Self { metric: Metric::Euclidean, max_points: DEFAULT_MAX_POINTS, parallel: true }
    }
}

/// Dense symmetric `n × n` distance matrix with a zero diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix {
    n: usize,
    values: Vec<f64>,
}

impl DistanceMatrix {
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.values[i * self.n..(i + 1) * self.n]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.values
    }
}

/// Euclidean distance matrix with default options.
pub fn pairwise_distances(ds: &Dataset) -> Result<DistanceMatrix> {
    pairwise_distances_with(ds, DistanceOptions::default())
}

pub fn pairwise_distances_with(ds: &Dataset, opts: DistanceOptions) -> Result<DistanceMatrix> {
    let n = ds.len();
    if n > opts.max_points {
        return Err(Error::TooLarge { n, cap: opts.max_points });
    }
    let mut values = vec![0.0; n * n];
    let fill = |(i, row): (usize, &mut [f64])| {
        let p = ds.point(i);
        for (j, slot) in row.iter_mut().enumerate() {
            if j != i {
                *slot = opts.metric.distance(p, ds.point(j));
            }
        }
    };
    if opts.parallel {
        values.par_chunks_mut(n).enumerate().for_each(fill);
    } else {
        values.chunks_mut(n).enumerate().for_each(fill);
    }
    Ok(DistanceMatrix { n, values })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn col(ds: &Dataset, j: usize) -> Vec<f64> {
        ds.points().map(|p| p[j]).collect()
    }

    #[test]
    fn parses_labelled_rows() {
        let ds = Dataset::from_csv_str("t", "0,0,A\n1,0,A\n5,5,B\n", true).unwrap();
        assert_eq!(ds.len(), 3);
        assert_eq!(ds.dim(), 2);
        assert_eq!(ds.labels(), Some(&[0, 0, 1][..]));
        assert_eq!(ds.label_names().unwrap(), &["A".to_string(), "B".to_string()]);
    }

    #[test]
    fn header_and_crlf() {
        let ds = Dataset::from_csv_str("t", "x,y,class\r\n1,2,7\r\n3,4,3\r\n5,6,7\r\n", true).unwrap();
        assert_eq!(ds.len(), 3);
        assert_eq!(ds.point(1), &[3.0, 4.0]);
        assert_eq!(ds.labels(), Some(&[0, 1, 0][..]));
    }

    #[test]
    fn bad_field_names_its_line() {
        let err = Dataset::from_csv_str("t", "1,x,0\n", true).unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 1),
            other => panic!("unexpected {other:?}"),
        }
        let err = Dataset::from_csv_str("t", "1,2\n3,4\n5,y\n", false).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
    }

    #[test]
    fn ragged_rows_rejected() {
        let err = Dataset::from_csv_str("t", "1,2\n3,4,5\n", false).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
    }

    #[test]
    fn non_finite_rejected() {
        let err = Dataset::from_csv_str("t", "1,2\ninf,4\n", false).unwrap_err();
        assert!(matches!(err, Error::NonFinite { line: 2, column: 1 }));
        let err = Dataset::from_csv_str("t", "1,NaN\n", false).unwrap_err();
        assert!(matches!(err, Error::NonFinite { line: 1, column: 2 }));
    }

    #[test]
    fn empty_inputs() {
        assert!(matches!(Dataset::from_csv_str("t", "", false), Err(Error::EmptyDataset)));
        assert!(matches!(Dataset::from_csv_str("t", "a,b\n\n", false), Err(Error::EmptyDataset)));
    }

    #[test]
    fn load_from_disk() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("pts.csv");
        std::fs::write(&path, "0,0,A\n1,0,A\n5,5,B\n").unwrap();
        let ds = load_csv(&path, true).unwrap();
        assert_eq!(ds.name(), "pts");
        assert_eq!(ds.labels(), Some(&[0, 0, 1][..]));
        assert!(matches!(load_csv(dir.path().join("nope.csv"), false), Err(Error::Io { .. })));
    }

    #[test]
    fn normalize_columns() {
        let ds = Dataset::from_rows("t", &[[2.0, 5.0], [4.0, 5.0], [6.0, 5.0]]).unwrap();
        let n = minmax_normalize(&ds);
        assert_eq!(col(&n, 0), vec![0.0, 0.5, 1.0]);
        assert_eq!(col(&n, 1), vec![0.0, 0.0, 0.0]);
    }

    #[test]
    fn normalize_two_dimensional_by_hand() {
        // column 0: min 0, max 10; column 1: min 0, max 10
        let ds = Dataset::from_rows("t", &[[0.0, 10.0], [10.0, 0.0], [5.0, 5.0]]).unwrap();
        let n = minmax_normalize(&ds);
        assert_eq!(n.as_slice(), &[0.0, 1.0, 1.0, 0.0, 0.5, 0.5]);
    }

    #[test]
    fn normalize_keeps_labels() {
        let ds = Dataset::from_csv_str("t", "0,B\n4,A\n", true).unwrap();
        let n = minmax_normalize(&ds);
        assert_eq!(n.labels(), ds.labels());
    }

    #[test]
    fn three_four_five() {
        let ds = Dataset::from_rows("t", &[[0.0, 0.0], [3.0, 4.0]]).unwrap();
        let dm = pairwise_distances(&ds).unwrap();
        assert_eq!(dm.get(0, 1), 5.0);
        assert_eq!(dm.get(1, 0), 5.0);
        assert_eq!(dm.get(0, 0), 0.0);
        assert_eq!(dm.get(1, 1), 0.0);
    }

    #[test]
    fn matches_naive_double_loop() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let rows: Vec<Vec<f64>> =
            (0..8).map(|_| (0..3).map(|_| rng.gen_range(-5.0..5.0)).collect()).collect();
        let ds = Dataset::from_rows("r", &rows).unwrap();
        let dm = pairwise_distances(&ds).unwrap();
        for i in 0..8 {
            for j in 0..8 {
                let mut s = 0.0;
                for k in 0..3 {
                    s += (rows[i][k] - rows[j][k]).powi(2);
                }
                assert!((dm.get(i, j) - s.sqrt()).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn cap_is_enforced() {
        let ds = Dataset::from_rows("t", &[[0.0], [1.0], [2.0]]).unwrap();
        let opts = DistanceOptions { max_points: 2, ..Default::default() };
        assert!(matches!(pairwise_distances_with(&ds, opts), Err(Error::TooLarge { n: 3, cap: 2 })));
    }

    #[test]
    fn csv_roundtrip_preserves_partition() {
        let ds = Dataset::from_csv_str("t", "0,0,z\n1,1,y\n2,2,z\n", true).unwrap();
        let again = Dataset::from_csv_str("t", &ds.to_csv_string(), true).unwrap();
        assert_eq!(again.labels(), ds.labels());
        assert_eq!(again.as_slice(), ds.as_slice());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn dataset() -> impl Strategy<Value = Dataset> {
            (1usize..12, 1usize..4).prop_flat_map(|(n, d)| {
                prop::collection::vec(-1e3f64..1e3, n * d)
                    .prop_map(move |v| Dataset::new("p", d, v).unwrap())
            })
        }

        proptest! {
            #[test]
            fn distance_matrix_is_symmetric_with_zero_diagonal(ds in dataset()) {
                let seq = pairwise_distances_with(&ds, DistanceOptions { parallel: false, ..Default::default() }).unwrap();
                let par = pairwise_distances_with(&ds, DistanceOptions { parallel: true, ..Default::default() }).unwrap();
                prop_assert_eq!(&seq, &par);
                for i in 0..ds.len() {
                    prop_assert_eq!(seq.get(i, i), 0.0);
                    for j in 0..ds.len() {
                        prop_assert_eq!(seq.get(i, j), seq.get(j, i));
                        prop_assert!(seq.get(i, j) >= 0.0);
                    }
                }
            }

            #[test]
            fn triangle_inequality(ds in dataset()) {
                let dm = pairwise_distances(&ds).unwrap();
                let n = ds.len();
                for i in 0..n { for j in 0..n { for k in 0..n {
                    prop_assert!(dm.get(i, k) <= dm.get(i, j) + dm.get(j, k) + 1e-9);
                }}}
            }

            #[test]
            fn normalize_is_idempotent(ds in dataset()) {
                let once = minmax_normalize(&ds);
                let twice = minmax_normalize(&once);
                prop_assert!(once.as_slice().iter().all(|v| (0.0..=1.0).contains(v)));
                // (x - 0) / (1 - 0) is exact, so non-constant columns repeat bit for bit
                prop_assert_eq!(once.as_slice(), twice.as_slice());
            }

            #[test]
            fn label_remap_is_a_bijection(raw in prop::collection::vec(0u8..5, 1..30)) {
                let (ids, names) = remap_labels(&raw.iter().map(|v| v.to_string()).collect::<Vec<_>>());
                for (id, r) in ids.iter().zip(&raw) {
                    prop_assert_eq!(&names[*id], &r.to_string());
                }
                let mut first_seen = Vec::new();
                for id in &ids { if !first_seen.contains(id) { first_seen.push(*id); } }
                prop_assert_eq!(first_seen, (0..names.len()).collect::<Vec<_>>());
            }
        }
    }
}
