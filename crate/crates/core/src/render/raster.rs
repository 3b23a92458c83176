//! Column-sampled coverage rasterizer.
//!
//! For every pixel column overlapping `[x_left, x_right)` the quad's
//! vertical span at the centre of the overlap is intersected exactly with
//! each pixel row and weighted by the overlap width, so the ink of a quad
//! inside the canvas equals its area. Contributions are accumulated as 32.32 fixed-point integers so
//! that the sum is associative: any record order and any thread schedule
//! yield the same bits. Clamping to 1 happens only at read-out.

use rayon::prelude::*;

use super::{build_quads, PlotConfig, SegmentQuad};
use crate::data::NormalizedDataset;
use crate::error::{Error, Result};

const FRAC_BITS: u32 = 32;
const ONE: f64 = (1u64 << FRAC_BITS) as f64;

/// Quads per parallel work item.
const CHUNK: usize = 256;

/// Unclamped ink per pixel, in fixed point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InkBuffer {
    width: usize,
    height: usize,
    cells: Vec<u64>,
}

impl InkBuffer {
    pub fn new(width: usize, height: usize) -> Self {
        Self { width, height, cells: vec![0; width * height] }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    /// Unclamped ink of cell `(x, y)`.
    pub fn get(&self, x: usize, y: usize) -> f64 {
        self.cells[y * self.width + x] as f64 / ONE
    }

    /// Sum of unclamped ink over the whole buffer.
    pub fn total(&self) -> f64 {
        self.cells.iter().map(|&c| c as u128).sum::<u128>() as f64 / ONE
    }

    /// Row-major unclamped values.
    pub fn values(&self) -> impl Iterator<Item = f64> + '_ {
        self.cells.iter().map(|&c| c as f64 / ONE)
    }

    /// Adds one quad's coverage.
    pub fn add_quad(&mut self, q: &SegmentQuad) {
        let thickness = q.vertical_thickness();
        if thickness.is_nan() || thickness <= 0.0 || q.x_right <= q.x_left {
            return;
        }
        let half = thickness / 2.0;
        let slope = (q.y_right - q.y_left) / (q.x_right - q.x_left);
        let first = q.x_left.floor().max(0.0);
        let end = q.x_right.ceil().min(self.width as f64);
        if end <= first {
            return;
        }
        let height = self.height as f64;
        for col in first as usize..end as usize {
            let a = q.x_left.max(col as f64);
            let b = q.x_right.min(col as f64 + 1.0);
            let span = b - a;
            if span.is_nan() || span <= 0.0 {
                continue;
            }
            let xc = (a + b) / 2.0;
            let yc = q.y_left + slope * (xc - q.x_left);
            let top = (yc - half).max(0.0);
            let bottom = (yc + half).min(height);
            if bottom <= top {
                continue;
            }
            let first_row = top.floor() as usize;
            let last_row = (bottom.ceil() as usize).min(self.height);
            for row in first_row..last_row {
                let r = row as f64;
                let covered = (bottom.min(r + 1.0) - top.max(r)) * span;
                if covered > 0.0 {
                    self.cells[row * self.width + col] += (covered * ONE).round() as u64;
                }
            }
        }
    }

    fn merge(mut self, other: InkBuffer) -> InkBuffer {
        for (a, b) in self.cells.iter_mut().zip(other.cells) {
            *a += b;
        }
        self
    }

    /// Clamped view, one value in `[0, 1]` per cell.
    pub fn coverage(&self) -> CoverageBuffer {
        CoverageBuffer {
            width: self.width,
            height: self.height,
            cells: self.cells.iter().map(|&c| (c as f64 / ONE).min(1.0)).collect(),
        }
    }
}

/// Visible coverage in `[0, 1]` per pixel, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct CoverageBuffer {
    width: usize,
    height: usize,
    cells: Vec<f64>,
}

impl CoverageBuffer {
    /// Builds a buffer from row-major cells; each must lie in `[0, 1]`.
    pub fn from_cells(width: usize, height: usize, cells: Vec<f64>) -> Result<Self> {
        if cells.len() != width * height {
            return Err(Error::Structure(format!("{} cells for a {width}x{height} buffer", cells.len())));
        }
        if cells.iter().any(|c| !(0.0..=1.0).contains(c)) {
            return Err(Error::Structure("coverage values must lie in [0, 1]".into()));
        }
        Ok(Self { width, height, cells })
    }

    pub fn filled(width: usize, height: usize, value: f64) -> Self {
        Self { width, height, cells: vec![value.clamp(0.0, 1.0); width * height] }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn get(&self, x: usize, y: usize) -> f64 {
        self.cells[y * self.width + x]
    }

    pub fn cells(&self) -> &[f64] {
        &self.cells
    }

    pub fn row(&self, y: usize) -> &[f64] {
        &self.cells[y * self.width..(y + 1) * self.width]
    }
}

/// Accumulates `quads` into a fresh buffer. The result does not depend on
/// quad order or on the thread pool.
pub fn rasterize_quads(quads: &[SegmentQuad], width: usize, height: usize) -> InkBuffer {
    if quads.len() <= CHUNK {
        let mut buf = InkBuffer::new(width, height);
        quads.iter().for_each(|q| buf.add_quad(q));
        return buf;
    }
    quads
        .par_chunks(CHUNK)
        .fold(
            || InkBuffer::new(width, height),
            |mut buf, chunk| {
                chunk.iter().for_each(|q| buf.add_quad(q));
                buf
            },
        )
        .reduce(|| InkBuffer::new(width, height), InkBuffer::merge)
}

/// Unclamped ink of a whole rendering.
pub fn rasterize(data: &NormalizedDataset, config: &PlotConfig) -> Result<InkBuffer> {
    let quads = build_quads(data, config)?;
    Ok(rasterize_quads(&quads, config.width_px as usize, config.height_px as usize))
}

/// Visible coverage of a whole rendering.
pub fn render_raster(data: &NormalizedDataset, config: &PlotConfig) -> Result<CoverageBuffer> {
    Ok(rasterize(data, config)?.coverage())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::render::segment_between;

    fn quad(config: &PlotConfig, x0: f64, y0: f64, x1: f64, y1: f64) -> SegmentQuad {
        SegmentQuad {
            record: 0,
            axis: 0,
            x_left: x0,
            x_right: x1,
            y_left: y0,
            y_right: y1,
            geometry: segment_between(config, x0, y0, x1, y1).unwrap(),
        }
    }

    #[test]
    fn interior_cells_are_full_and_edges_fractional() {
        let c = PlotConfig { h: 2.0, p: 1.0, ..Default::default() };
        let mut buf = InkBuffer::new(20, 10);
        // Flat segment centred on y = 5.25, thickness 2 → rows 4 (0.75), 5 (1), 6 (0.25).
        buf.add_quad(&quad(&c, 2.0, 5.25, 12.0, 5.25));
        for x in 2..12 {
            assert_eq!(buf.get(x, 4), 0.75);
            assert_eq!(buf.get(x, 5), 1.0);
            assert_eq!(buf.get(x, 6), 0.25);
        }
        assert_eq!(buf.get(1, 5), 0.0);
        assert_eq!(buf.get(12, 5), 0.0);
        assert_eq!(buf.total(), 20.0);
    }

    #[test]
    fn clipped_at_buffer_edges() {
        let c = PlotConfig { h: 4.0, p: 0.0, ..Default::default() };
        let mut buf = InkBuffer::new(5, 5);
        buf.add_quad(&quad(&c, -3.0, 0.0, 10.0, 0.0));
        assert_eq!(buf.total(), 5.0 * 2.0);
    }

    #[test]
    fn overlapping_quads_accumulate_then_clamp() {
        let c = PlotConfig { h: 1.0, p: 1.0, ..Default::default() };
        let q = quad(&c, 0.0, 2.5, 4.0, 2.5);
        let buf = rasterize_quads(&[q, q, q], 4, 5);
        assert_eq!(buf.get(1, 2), 3.0);
        assert_eq!(buf.coverage().get(1, 2), 1.0);
        assert_eq!(buf.total(), 12.0);
    }

    #[test]
    fn coverage_buffer_validation() {
        assert!(CoverageBuffer::from_cells(2, 2, vec![0.0; 3]).is_err());
        assert!(CoverageBuffer::from_cells(1, 1, vec![1.5]).is_err());
        let b = CoverageBuffer::from_cells(2, 1, vec![0.25, 1.0]).unwrap();
        assert_eq!(b.row(0), &[0.25, 1.0]);
    }
}
