//! Ink and distortion measurements over analytic geometry and raster
//! buffers.
//!
//! "Ink" is the sum of coverage over a region in px². Unclamped ink counts
//! overlapping strokes once per stroke and matches the `length * omega`
//! algebra; clamped ink counts what is visible.
//!
//! The ghost-cluster proxy is the Gini coefficient of unclamped ink summed
//! over 16x16 px cells of the plot interior. Structureless data drawn
//! without slope correction piles ink into dense zig-zag bands a few dozen
//! pixels wide, which shows up as concentration at that scale. Per-pixel
//! Gini mostly measures how thin the strokes are (thin strokes leave more
//! empty pixels), so it rises with `p` and is reported separately.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::data::NormalizedDataset;
use crate::error::{Error, Result};
use crate::render::{build_quads, rasterize, rasterize_quads, CoverageBuffer, InkBuffer, PlotConfig};

/// Identifier of the report document layout.
pub const REPORT_SCHEMA: &str = "slopepcp.metrics/1";

/// Width of one angle histogram bin, in degrees.
pub const ANGLE_BIN_DEG: f64 = 5.0;
pub const ANGLE_BINS: usize = 18;

/// Side of the square cells over which the ghost-cluster proxy sums ink.
pub const GHOST_CELL_PX: usize = 16;

/// Axis-aligned pixel rectangle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Region {
    pub x: usize,
    pub y: usize,
    pub width: usize,
    pub height: usize,
}

impl Region {
    fn check(&self, width: usize, height: usize) -> Result<()> {
        if self.width == 0 || self.height == 0 {
            return Err(Error::Region("region is empty".into()));
        }
        if self.x + self.width > width || self.y + self.height > height {
            return Err(Error::Region(format!(
                "{}x{} at ({}, {}) exceeds {width}x{height} buffer",
                self.width, self.height, self.x, self.y
            )));
        }
        Ok(())
    }

    fn cells<'a>(&self, stride: usize, cells: &'a [f64]) -> impl Iterator<Item = f64> + 'a {
        let (x, w) = (self.x, self.width);
        (self.y..self.y + self.height)
            .flat_map(move |row| cells[row * stride + x..row * stride + x + w].iter().copied())
    }
}

/// Pixels between the first and last axis and between the axis ends.
pub fn plot_interior(config: &PlotConfig) -> Region {
    let m0 = config.margin_px.floor() as usize;
    let x1 = ((config.width_px as f64 - config.margin_px).ceil() as usize).min(config.width_px as usize);
    let y1 = ((config.height_px as f64 - config.margin_px).ceil() as usize).min(config.height_px as usize);
    Region { x: m0, y: m0, width: x1.saturating_sub(m0), height: y1.saturating_sub(m0) }
}

/// Sum of coverage over `region`, or over the whole buffer.
pub fn total_ink(buffer: &CoverageBuffer, region: Option<Region>) -> Result<f64> {
    match region {
        None => Ok(buffer.cells().iter().sum()),
        Some(r) => {
            r.check(buffer.width(), buffer.height())?;
            Ok(r.cells(buffer.width(), buffer.cells()).sum())
        }
    }
}

/// Gini coefficient of non-negative values: 0 for an even spread, `(n-1)/n`
/// when one value holds everything. All-zero input counts as even.
pub fn gini(values: &[f64]) -> f64 {
    let n = values.len();
    if n <= 1 {
        return 0.0;
    }
    let mut sorted = values.to_vec();
    sorted.sort_unstable_by(f64::total_cmp);
    let sum: f64 = sorted.iter().sum();
    if sum <= 0.0 {
        return 0.0;
    }
    let weighted: f64 = sorted.iter().enumerate().map(|(i, v)| (i + 1) as f64 * v).sum();
    let n = n as f64;
    (2.0 * weighted / (n * sum) - (n + 1.0) / n).clamp(0.0, 1.0)
}

/// Gini coefficient of the coverage cells in `region` (or the whole buffer).
pub fn concentration_gini(buffer: &CoverageBuffer, region: Option<Region>) -> Result<f64> {
    let region = region.unwrap_or(Region { x: 0, y: 0, width: buffer.width(), height: buffer.height() });
    region.check(buffer.width(), buffer.height())?;
    let cells: Vec<f64> = region.cells(buffer.width(), buffer.cells()).collect();
    Ok(gini(&cells))
}

/// Gini coefficient of unclamped ink in `region`.
pub fn ink_concentration_gini(buffer: &InkBuffer, region: Region) -> Result<f64> {
    region.check(buffer.width(), buffer.height())?;
    let values: Vec<f64> = buffer.values().collect();
    let cells: Vec<f64> = region.cells(buffer.width(), &values).collect();
    Ok(gini(&cells))
}

/// Unclamped ink summed over `cell`-sized squares tiling `region`. Partial
/// squares at the right and bottom edges are dropped.
pub fn block_ink(buffer: &InkBuffer, region: Region, cell: usize) -> Result<Vec<f64>> {
    region.check(buffer.width(), buffer.height())?;
    if cell == 0 {
        return Err(Error::Region("cell size must be positive".into()));
    }
    let (cols, rows) = (region.width / cell, region.height / cell);
    let mut sums = vec![0.0; cols * rows];
    for y in 0..rows * cell {
        for x in 0..cols * cell {
            sums[(y / cell) * cols + x / cell] += buffer.get(region.x + x, region.y + y);
        }
    }
    Ok(sums)
}

/// Ghost-cluster proxy: Gini of [`block_ink`] over [`GHOST_CELL_PX`] cells of
/// the plot interior. Falls back to single pixels when no full cell fits.
pub fn ghost_concentration(buffer: &InkBuffer, config: &PlotConfig) -> Result<f64> {
    let interior = plot_interior(config);
    let cell = if interior.width >= GHOST_CELL_PX && interior.height >= GHOST_CELL_PX { GHOST_CELL_PX } else { 1 };
    Ok(gini(&block_ink(buffer, interior, cell)?))
}

/// Ink of one labelled group rendered on its own.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClusterInk {
    pub label: i64,
    pub records: usize,
    pub ink_unclamped: f64,
    pub ink_clamped: f64,
    /// Unclamped ink divided by the record count.
    pub ink_per_record: f64,
}

/// Renders every label group in isolation and measures its ink, ordered by
/// label.
pub fn cluster_ink(data: &NormalizedDataset, config: &PlotConfig) -> Result<Vec<ClusterInk>> {
    let labels = data.labels().ok_or(Error::MissingLabels)?;
    config.validate()?;
    let mut groups: BTreeMap<i64, usize> = BTreeMap::new();
    for &l in labels {
        *groups.entry(l).or_default() += 1;
    }
    groups
        .into_par_iter()
        .map(|(label, records)| {
            let subset = data.filter_records(|i| labels[i] == label);
            let ink = rasterize(&subset, config)?;
            let unclamped = ink.total();
            Ok(ClusterInk {
                label,
                records,
                ink_unclamped: unclamped,
                ink_clamped: ink.coverage().cells().iter().sum(),
                ink_per_record: unclamped / records as f64,
            })
        })
        .collect()
}

/// Summary statistics of per-segment analytic areas.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AreaStats {
    pub count: usize,
    pub min: f64,
    pub max: f64,
    pub mean: f64,
    /// Population standard deviation.
    pub stddev: f64,
}

impl AreaStats {
    fn of(values: &[f64]) -> Self {
        if values.is_empty() {
            return Self { count: 0, min: 0.0, max: 0.0, mean: 0.0, stddev: 0.0 };
        }
        let n = values.len() as f64;
        let mean = values.iter().sum::<f64>() / n;
        let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
        Self {
            count: values.len(),
            min: values.iter().copied().fold(f64::INFINITY, f64::min),
            max: values.iter().copied().fold(f64::NEG_INFINITY, f64::max),
            mean,
            stddev: var.sqrt(),
        }
    }
}

/// Full measurement of one rendering.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricsReport {
    pub schema: String,
    pub records: usize,
    pub dimensions: usize,
    /// Empty when the dataset has no labels.
    pub per_cluster_ink: Vec<ClusterInk>,
    /// `ink_ratio_matrix[i][j]` is the per-record ink of cluster `i` over that
    /// of cluster `j`, in `per_cluster_ink` order.
    pub ink_ratio_matrix: Vec<Vec<f64>>,
    pub analytic_area_stats: AreaStats,
    /// Sum of `length * omega` over all segments.
    pub analytic_total_area: f64,
    /// Counts of segment angles in 5-degree bins over `[0, 90)`.
    pub angle_histogram: Vec<u64>,
    pub mean_alpha_deg: f64,
    pub total_ink_unclamped: f64,
    pub total_ink_clamped: f64,
    /// Ghost-cluster proxy, see [`ghost_concentration`].
    pub concentration_gini: f64,
    /// Gini of clamped per-pixel coverage in the plot interior.
    pub pixel_coverage_gini: f64,
    /// Visible ink over the plot interior area.
    pub data_ink_ratio: f64,
    /// True when `min_width` overrode some widths, which breaks the
    /// equal-area property.
    pub min_width_active: bool,
    pub config_echo: PlotConfig,
}

/// Computes analytic segment statistics and raster measurements.
pub fn analytic_report(data: &NormalizedDataset, config: &PlotConfig) -> Result<MetricsReport> {
    let quads = build_quads(data, config)?;
    let areas: Vec<f64> = quads.iter().map(|q| q.geometry.area).collect();

    let mut histogram = vec![0u64; ANGLE_BINS];
    for q in &quads {
        let bin = (q.geometry.alpha.to_degrees() / ANGLE_BIN_DEG).floor() as usize;
        histogram[bin.min(ANGLE_BINS - 1)] += 1;
    }
    let mean_alpha_deg = if quads.is_empty() {
        0.0
    } else {
        quads.iter().map(|q| q.geometry.alpha.to_degrees()).sum::<f64>() / quads.len() as f64
    };

    let ink = rasterize_quads(&quads, config.width_px as usize, config.height_px as usize);
    let coverage = ink.coverage();
    let interior = plot_interior(config);
    let clamped = total_ink(&coverage, None)?;
    let interior_ink = total_ink(&coverage, Some(interior))?;

    let per_cluster_ink = match data.labels() {
        Some(_) => cluster_ink(data, config)?,
        None => Vec::new(),
    };
    let ink_ratio_matrix = per_cluster_ink
        .iter()
        .map(|a| per_cluster_ink.iter().map(|b| a.ink_per_record / b.ink_per_record).collect())
        .collect();

    Ok(MetricsReport {
        schema: REPORT_SCHEMA.into(),
        records: data.len(),
        dimensions: data.dims(),
        per_cluster_ink,
        ink_ratio_matrix,
        analytic_area_stats: AreaStats::of(&areas),
        analytic_total_area: areas.iter().sum(),
        angle_histogram: histogram,
        mean_alpha_deg,
        total_ink_unclamped: ink.total(),
        total_ink_clamped: clamped,
        concentration_gini: ghost_concentration(&ink, config)?,
        pixel_coverage_gini: concentration_gini(&coverage, Some(interior))?,
        data_ink_ratio: interior_ink / (interior.width * interior.height) as f64,
        min_width_active: config.min_width_active(),
        config_echo: config.clone(),
    })
}

impl MetricsReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Structure(format!("metrics report: {e}")))
    }

    /// Flat `key = value` lines, one per scalar, in a fixed order.
    pub fn to_key_value(&self) -> String {
        let mut out = String::new();
        let mut kv = |k: &str, v: &dyn std::fmt::Display| {
            let _ = writeln!(out, "{k} = {v}");
        };
        kv("schema", &self.schema);
        kv("records", &self.records);
        kv("dimensions", &self.dimensions);
        let c = &self.config_echo;
        kv("config.width_px", &c.width_px);
        kv("config.height_px", &c.height_px);
        kv("config.margin_px", &c.margin_px);
        kv("config.h", &c.h);
        kv("config.p", &c.p);
        kv("config.color", &c.color);
        kv("config.opacity", &c.opacity);
        kv("config.draw_axes", &c.draw_axes);
        kv("config.min_width", &c.min_width);
        kv("min_width_active", &self.min_width_active);
        let a = &self.analytic_area_stats;
        kv("area.count", &a.count);
        kv("area.min", &a.min);
        kv("area.max", &a.max);
        kv("area.mean", &a.mean);
        kv("area.stddev", &a.stddev);
        kv("area.total", &self.analytic_total_area);
        kv("mean_alpha_deg", &self.mean_alpha_deg);
        for (i, count) in self.angle_histogram.iter().enumerate() {
            let lo = i as f64 * ANGLE_BIN_DEG;
            kv(&format!("angle_histogram.{lo:02}-{:02}", lo + ANGLE_BIN_DEG), count);
        }
        kv("ink.unclamped", &self.total_ink_unclamped);
        kv("ink.clamped", &self.total_ink_clamped);
        kv("concentration_gini", &self.concentration_gini);
        kv("pixel_coverage_gini", &self.pixel_coverage_gini);
        kv("data_ink_ratio", &self.data_ink_ratio);
        for cl in &self.per_cluster_ink {
            let p = format!("cluster.{}", cl.label);
            kv(&format!("{p}.records"), &cl.records);
            kv(&format!("{p}.ink_unclamped"), &cl.ink_unclamped);
            kv(&format!("{p}.ink_clamped"), &cl.ink_clamped);
            kv(&format!("{p}.ink_per_record"), &cl.ink_per_record);
        }
        for (i, row) in self.ink_ratio_matrix.iter().enumerate() {
            for (j, r) in row.iter().enumerate() {
                let (a, b) = (self.per_cluster_ink[i].label, self.per_cluster_ink[j].label);
                kv(&format!("ink_ratio.{a}/{b}"), r);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn total_ink_examples() {
        assert_eq!(total_ink(&CoverageBuffer::filled(5, 5, 0.0), None).unwrap(), 0.0);
        assert_eq!(total_ink(&CoverageBuffer::filled(10, 10, 1.0), None).unwrap(), 100.0);
        let half_row = CoverageBuffer::from_cells(10, 1, vec![0.5; 10]).unwrap();
        assert_eq!(total_ink(&half_row, None).unwrap(), 5.0);
    }

    #[test]
    fn total_ink_region() {
        let mut cells = vec![0.0; 16];
        cells[5] = 1.0;
        cells[6] = 0.5;
        let b = CoverageBuffer::from_cells(4, 4, cells).unwrap();
        let r = Region { x: 1, y: 1, width: 2, height: 1 };
        assert_eq!(total_ink(&b, Some(r)).unwrap(), 1.5);
        assert!(total_ink(&b, Some(Region { x: 3, y: 0, width: 2, height: 1 })).is_err());
        assert!(total_ink(&b, Some(Region { x: 0, y: 0, width: 0, height: 1 })).is_err());
    }

    #[test]
    fn gini_examples() {
        assert_eq!(concentration_gini(&CoverageBuffer::filled(8, 8, 0.3), None).unwrap(), 0.0);
        let mut cells = vec![0.0; 50];
        cells[17] = 0.8;
        let b = CoverageBuffer::from_cells(10, 5, cells).unwrap();
        assert!((concentration_gini(&b, None).unwrap() - 49.0 / 50.0).abs() < 1e-12);
        assert!(concentration_gini(&b, Some(Region { x: 0, y: 0, width: 0, height: 0 })).is_err());
    }

    #[test]
    fn block_sums() {
        let mut buf = InkBuffer::new(5, 4);
        let c = PlotConfig { h: 2.0, p: 1.0, ..Default::default() };
        let q = crate::render::SegmentQuad {
            record: 0,
            axis: 0,
            x_left: 0.0,
            x_right: 5.0,
            y_left: 1.0,
            y_right: 1.0,
            geometry: crate::render::segment_between(&c, 0.0, 1.0, 5.0, 1.0).unwrap(),
        };
        buf.add_quad(&q);
        let r = Region { x: 0, y: 0, width: 5, height: 4 };
        // 2x2 cells: two full columns of cells, fifth column dropped.
        assert_eq!(block_ink(&buf, r, 2).unwrap(), vec![4.0, 4.0, 0.0, 0.0]);
        assert!(block_ink(&buf, r, 0).is_err());
        assert_eq!(block_ink(&buf, r, 1).unwrap().iter().sum::<f64>(), 10.0);
    }

    #[test]
    fn labels_required_for_cluster_ink() {
        let ds = NormalizedDataset::from_unit_rows(&["a", "b"], &[vec![0.0, 1.0]], None).unwrap();
        assert!(matches!(cluster_ink(&ds, &PlotConfig::default()), Err(Error::MissingLabels)));
    }

    #[test]
    fn identical_records_overlap_fully_when_clamped() {
        let rows = vec![vec![0.2, 0.7, 0.4]; 5];
        let ds = NormalizedDataset::from_unit_rows(&["a", "b", "c"], &rows, Some(vec![0; 5])).unwrap();
        let single = NormalizedDataset::from_unit_rows(&["a", "b", "c"], &rows[..1], Some(vec![0])).unwrap();
        let c = PlotConfig::default();
        let many = &cluster_ink(&ds, &c).unwrap()[0];
        let one = &cluster_ink(&single, &c).unwrap()[0];
        // Interior cells saturate at 1 either way; partial edge cells stack
        // up to at most one cell each.
        let touched = rasterize(&single, &c).unwrap().values().filter(|&v| v > 0.0).count() as f64;
        assert!(many.ink_clamped >= one.ink_clamped);
        assert!(many.ink_clamped <= touched);
        assert!((many.ink_unclamped - 5.0 * one.ink_unclamped).abs() < 1e-6 * many.ink_unclamped);
        assert!((many.ink_per_record - one.ink_per_record).abs() < 1e-6 * one.ink_per_record);
    }

    #[test]
    fn equal_area_report() {
        let ds = NormalizedDataset::from_unit_rows(
            &["a", "b", "c", "d"],
            &[vec![0.0, 1.0, 0.2, 0.9], vec![0.5, 0.5, 0.1, 0.95], vec![0.3, 0.0, 1.0, 0.0]],
            Some(vec![0, 1, 1]),
        )
        .unwrap();
        let r = analytic_report(&ds, &PlotConfig { p: 1.0, ..Default::default() }).unwrap();
        assert!(r.analytic_area_stats.stddev <= 1e-9 * r.analytic_area_stats.mean);
        assert_eq!(r.angle_histogram.iter().sum::<u64>(), 9);
        assert_eq!(r.per_cluster_ink.len(), 2);
        assert_eq!(r.ink_ratio_matrix[0][0], 1.0);
        assert!((0.0..=1.0).contains(&r.concentration_gini));
        assert!((0.0..=1.0).contains(&r.data_ink_ratio));
        assert!(!r.min_width_active);
    }

    #[test]
    fn horizontal_record_fills_first_bin() {
        let ds = NormalizedDataset::from_unit_rows(&["a", "b", "c"], &[vec![0.4, 0.4, 0.4]], None).unwrap();
        let r = analytic_report(&ds, &PlotConfig::default()).unwrap();
        assert_eq!(r.angle_histogram[0], 2);
        assert_eq!(r.angle_histogram[1..].iter().sum::<u64>(), 0);
        assert!(r.per_cluster_ink.is_empty());
    }

    #[test]
    fn report_serializations() {
        let ds = NormalizedDataset::from_unit_rows(&["a", "b"], &[vec![0.1, 0.9], vec![0.5, 0.6]], Some(vec![-1, 2]))
            .unwrap();
        let r = analytic_report(&ds, &PlotConfig { min_width: 0.5, ..Default::default() }).unwrap();
        assert!(r.min_width_active);
        assert_eq!(MetricsReport::from_json(&r.to_json()).unwrap(), r);
        let kv = r.to_key_value();
        assert!(kv.starts_with("schema = slopepcp.metrics/1\n"));
        assert!(kv.contains("\ncluster.-1.records = 1\n"));
        assert!(kv.contains("\nink_ratio.2/-1 = "));
        assert!(kv.contains("\nangle_histogram.85-90 = 0\n"));
        assert!(kv.lines().all(|l| l.contains(" = ")));
    }

    proptest! {
        #[test]
        fn gini_in_unit_interval(v in proptest::collection::vec(0.0f64..1.0, 1..200)) {
            let g = gini(&v);
            prop_assert!((0.0..=1.0).contains(&g));
        }

        #[test]
        fn gini_permutation_and_scale_invariant(v in proptest::collection::vec(0.0f64..1.0, 2..100), k in 0.01f64..100.0, rot in 0usize..100) {
            let g = gini(&v);
            let mut p = v.clone();
            p.rotate_left(rot % v.len());
            p.reverse();
            prop_assert!((gini(&p) - g).abs() < 1e-9);
            let scaled: Vec<f64> = v.iter().map(|x| x * k).collect();
            prop_assert!((gini(&scaled) - g).abs() < 1e-9);
        }
    }
}
