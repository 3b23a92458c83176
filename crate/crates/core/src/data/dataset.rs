use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Column name that `load_csv` treats as per-record cluster labels.
pub const LABEL_COLUMN: &str = "label";

/// Label value for records that belong to no cluster.
pub const NOISE_LABEL: i64 = -1;

/// Raw records over named dimensions, stored row-major.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Dataset {
    names: Vec<String>,
    values: Vec<f64>,
    labels: Option<Vec<i64>>,
}

impl Dataset {
    /// Builds a dataset from row-major `values`; `values.len()` must be a
    /// multiple of `names.len()`.
    pub fn new(names: Vec<String>, values: Vec<f64>, labels: Option<Vec<i64>>) -> Result<Self> {
        let d = names.len();
        if d < 2 {
            return Err(Error::Dimensionality(format!("got {d} dimension(s)")));
        }
        if !values.len().is_multiple_of(d) {
            return Err(Error::Structure(format!("{} values do not fill rows of {d} columns", values.len())));
        }
        let n = values.len() / d;
        if n == 0 {
            return Err(Error::Dimensionality("no records".into()));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::Parse {
                row: i / d + 1,
                column: i % d + 1,
                message: format!("value {} is not finite", values[i]),
            });
        }
        if let Some(l) = &labels {
            if l.len() != n {
                return Err(Error::Structure(format!("{} labels for {n} records", l.len())));
            }
        }
        Ok(Self { names, values, labels })
    }

    pub fn from_rows(names: &[&str], rows: &[Vec<f64>], labels: Option<Vec<i64>>) -> Result<Self> {
        let d = names.len();
        if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != d) {
            return Err(Error::Structure(format!("record {} has {} values, expected {d}", i + 1, r.len())));
        }
        Self::new(names.iter().map(|s| s.to_string()).collect(), rows.iter().flatten().copied().collect(), labels)
    }

    pub fn dims(&self) -> usize {
        self.names.len()
    }

    pub fn len(&self) -> usize {
        self.values.len() / self.dims()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn labels(&self) -> Option<&[i64]> {
        self.labels.as_deref()
    }

    pub fn record(&self, i: usize) -> &[f64] {
        let d = self.dims();
        &self.values[i * d..(i + 1) * d]
    }

    pub fn records(&self) -> impl Iterator<Item = &[f64]> {
        self.values.chunks_exact(self.dims())
    }

    pub fn column(&self, j: usize) -> impl Iterator<Item = f64> + '_ {
        self.records().map(move |r| r[j])
    }

    /// Serializes as CSV with a header row. Values use the shortest
    /// representation that parses back to the same `f64`.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.names.join(","));
        if self.labels.is_some() {
            out.push(',');
            out.push_str(LABEL_COLUMN);
        }
        out.push('\n');
        for (i, rec) in self.records().enumerate() {
            for (j, v) in rec.iter().enumerate() {
                if j > 0 {
                    out.push(',');
                }
                let _ = write!(out, "{v}");
            }
            if let Some(l) = &self.labels {
                let _ = write!(out, ",{}", l[i]);
            }
            out.push('\n');
        }
        out
    }
}

/// Parses comma-separated text with a header row. A column named `label`
/// becomes the cluster labels; every other column must be numeric.
pub fn load_csv(bytes: &[u8]) -> Result<Dataset> {
    let text = std::str::from_utf8(bytes).map_err(|e| Error::Structure(format!("input is not UTF-8: {e}")))?;
    let mut reader =
        csv::ReaderBuilder::new().has_headers(true).flexible(true).trim(csv::Trim::All).from_reader(text.as_bytes());

    let header = reader.headers().map_err(|e| Error::Structure(e.to_string()))?.clone();
    let label_col = header.iter().position(|h| h == LABEL_COLUMN);
    let names: Vec<String> =
        header.iter().enumerate().filter(|(i, _)| Some(*i) != label_col).map(|(_, h)| h.to_string()).collect();
    if names.len() < 2 {
        return Err(Error::Dimensionality(format!("header has {} numeric column(s)", names.len())));
    }

    let mut values = Vec::new();
    let mut labels = label_col.map(|_| Vec::new());
    for (i, record) in reader.records().enumerate() {
        // Line 1 is the header.
        let row = i + 2;
        let record = record.map_err(|e| Error::Structure(format!("row {row}: {e}")))?;
        if record.len() != header.len() {
            return Err(Error::Structure(format!("row {row} has {} cells, header has {}", record.len(), header.len())));
        }
        for (j, cell) in record.iter().enumerate() {
            let column = j + 1;
            if cell.is_empty() {
                return Err(Error::Parse { row, column, message: "missing value".into() });
            }
            if Some(j) == label_col {
                let l = cell.parse::<i64>().map_err(|_| Error::Parse {
                    row,
                    column,
                    message: format!("label {cell:?} is not an integer"),
                })?;
                labels.as_mut().unwrap().push(l);
            } else {
                let v = cell.parse::<f64>().ok().filter(|v| v.is_finite()).ok_or_else(|| Error::Parse {
                    row,
                    column,
                    message: format!("{cell:?} is not a finite number"),
                })?;
                values.push(v);
            }
        }
    }
    if values.is_empty() {
        return Err(Error::Dimensionality("no records after header".into()));
    }
    Dataset::new(names, values, labels)
}

/// A dataset scaled to `[0, 1]` per dimension, ready for layout.
///
/// Keeps the source range of each dimension (for axis labels) and whether
/// the axis is flipped.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormalizedDataset {
    names: Vec<String>,
    values: Vec<f64>,
    labels: Option<Vec<i64>>,
    ranges: Vec<(f64, f64)>,
    flipped: Vec<bool>,
}

impl NormalizedDataset {
    /// Wraps values that are already in `[0, 1]`. Source ranges are `(0, 1)`.
    /// Unlike [`Dataset`], zero records are allowed.
    pub fn from_unit_rows(names: &[&str], rows: &[Vec<f64>], labels: Option<Vec<i64>>) -> Result<Self> {
        let d = names.len();
        if d < 2 {
            return Err(Error::Dimensionality(format!("got {d} dimension(s)")));
        }
        let mut values = Vec::with_capacity(rows.len() * d);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != d {
                return Err(Error::Structure(format!("record {} has {} values, expected {d}", i + 1, r.len())));
            }
            if let Some(j) = r.iter().position(|v| !(0.0..=1.0).contains(v)) {
                return Err(Error::Parse {
                    row: i + 1,
                    column: j + 1,
                    message: format!("value {} is outside [0, 1]", r[j]),
                });
            }
            values.extend_from_slice(r);
        }
        if let Some(l) = &labels {
            if l.len() != rows.len() {
                return Err(Error::Structure(format!("{} labels for {} records", l.len(), rows.len())));
            }
        }
        Ok(Self {
            names: names.iter().map(|s| s.to_string()).collect(),
            values,
            labels,
            ranges: vec![(0.0, 1.0); d],
            flipped: vec![false; d],
        })
    }

    pub fn dims(&self) -> usize {
        self.names.len()
    }

    pub fn len(&self) -> usize {
        self.values.len() / self.dims()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn labels(&self) -> Option<&[i64]> {
        self.labels.as_deref()
    }

    /// Source `(min, max)` of each dimension.
    pub fn ranges(&self) -> &[(f64, f64)] {
        &self.ranges
    }

    pub fn flipped(&self) -> &[bool] {
        &self.flipped
    }

    pub fn record(&self, i: usize) -> &[f64] {
        let d = self.dims();
        &self.values[i * d..(i + 1) * d]
    }

    pub fn records(&self) -> impl Iterator<Item = &[f64]> {
        self.values.chunks_exact(self.dims())
    }

    pub fn column(&self, j: usize) -> impl Iterator<Item = f64> + '_ {
        self.records().map(move |r| r[j])
    }

    /// Source-scale value shown at normalized height `t` on axis `j`.
    pub fn axis_value_at(&self, j: usize, t: f64) -> f64 {
        let (lo, hi) = self.ranges[j];
        let v = if self.flipped[j] { 1.0 - t } else { t };
        if lo == hi {
            lo
        } else {
            lo + v * (hi - lo)
        }
    }

    /// Keeps only the records whose index satisfies `keep`.
    pub fn filter_records(&self, mut keep: impl FnMut(usize) -> bool) -> Self {
        let idx: Vec<usize> = (0..self.len()).filter(|&i| keep(i)).collect();
        let mut out = self.clone();
        out.values = idx.iter().flat_map(|&i| self.record(i).iter().copied()).collect();
        out.labels = self.labels.as_ref().map(|l| idx.iter().map(|&i| l[i]).collect());
        out
    }

    /// Values as a plain dataset (dropping ranges and flips).
    pub fn to_dataset(&self) -> Result<Dataset> {
        Dataset::new(self.names.clone(), self.values.clone(), self.labels.clone())
    }
}

/// Min-max scales each dimension to `[0, 1]`. A constant dimension maps
/// to 0.5.
pub fn normalize(data: &Dataset) -> NormalizedDataset {
    let d = data.dims();
    let ranges: Vec<(f64, f64)> = (0..d)
        .map(|j| data.column(j).fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v))))
        .collect();
    let values = data
        .records()
        .flat_map(|r| {
            r.iter().zip(&ranges).map(
                |(&v, &(lo, hi))| {
                    if lo == hi {
                        0.5
                    } else {
                        ((v - lo) / (hi - lo)).clamp(0.0, 1.0)
                    }
                },
            )
        })
        .collect();
    NormalizedDataset {
        names: data.names().to_vec(),
        values,
        labels: data.labels().map(<[i64]>::to_vec),
        ranges,
        flipped: vec![false; d],
    }
}

/// Reorders axes so that output axis `i` is input axis `permutation[i]`.
pub fn reorder_axes(data: &NormalizedDataset, permutation: &[usize]) -> Result<NormalizedDataset> {
    let d = data.dims();
    if permutation.len() != d {
        return Err(Error::InvalidPermutation(format!("{} entries for {d} dimensions", permutation.len())));
    }
    let mut seen = vec![false; d];
    for &p in permutation {
        if p >= d || std::mem::replace(&mut seen[p], true) {
            return Err(Error::InvalidPermutation(format!("{permutation:?} is not a bijection on 0..{d}")));
        }
    }
    Ok(NormalizedDataset {
        names: permutation.iter().map(|&p| data.names[p].clone()).collect(),
        values: data.records().flat_map(|r| permutation.iter().map(move |&p| r[p])).collect(),
        labels: data.labels.clone(),
        ranges: permutation.iter().map(|&p| data.ranges[p]).collect(),
        flipped: permutation.iter().map(|&p| data.flipped[p]).collect(),
    })
}

/// Inverts axis `index` (`v -> 1 - v`) and toggles its flip marker.
pub fn flip_axis(data: &NormalizedDataset, index: usize) -> Result<NormalizedDataset> {
    let d = data.dims();
    if index >= d {
        return Err(Error::AxisOutOfRange { index, dims: d });
    }
    let mut out = data.clone();
    for r in out.values.chunks_exact_mut(d) {
        r[index] = 1.0 - r[index];
    }
    out.flipped[index] = !out.flipped[index];
    Ok(out)
}
