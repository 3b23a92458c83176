//! Raster and vector rendering of normalized datasets.
//!
//! Every segment is a parallelogram whose left and right edges are
//! vertical, sit on the two axes, and are centred on the segment's
//! endpoints. The edge length is the segment's vertical thickness
//! `omega / cos(alpha)`.

mod config;
mod image;
mod raster;
mod svg;

pub use config::{PlotConfig, Rgb, MAX_SIDE_PX, RECOMMENDED_P};
pub use image::{encode_pgm, encode_png, write_image, ImageFormat};
pub use raster::{rasterize, rasterize_quads, render_raster, CoverageBuffer, InkBuffer};
pub use svg::render_svg;

use serde::Serialize;

use crate::data::NormalizedDataset;
use crate::error::{Error, Result};
use crate::geometry::{segment_geometry, SegmentGeometry, SegmentInput};

/// Evenly spaced axis x-positions from `margin` to `width - margin`.
pub fn layout(config: &PlotConfig, d: usize) -> Result<Vec<f64>> {
    if d < 2 {
        return Err(Error::Dimensionality(format!("layout needs 2 or more axes, got {d}")));
    }
    let dw = config.delta_w(d);
    let last = config.width_px as f64 - config.margin_px;
    Ok((0..d).map(|i| if i == d - 1 { last } else { config.margin_px + i as f64 * dw }).collect())
}

/// Pixel row of a normalized value; 1 maps to the top of the axis.
pub fn value_to_y(config: &PlotConfig, v: f64) -> f64 {
    config.margin_px + (1.0 - v) * config.axis_height()
}

/// One drawn segment in pixel coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SegmentQuad {
    pub record: usize,
    /// Index of the left axis.
    pub axis: usize,
    pub x_left: f64,
    pub x_right: f64,
    /// Centre of the left edge.
    pub y_left: f64,
    /// Centre of the right edge.
    pub y_right: f64,
    pub geometry: SegmentGeometry,
}

impl SegmentQuad {
    pub fn vertical_thickness(&self) -> f64 {
        self.geometry.vertical_thickness
    }

    /// Corners in order: left-top, right-top, right-bottom, left-bottom.
    pub fn vertices(&self) -> [(f64, f64); 4] {
        let half = self.vertical_thickness() / 2.0;
        [
            (self.x_left, self.y_left - half),
            (self.x_right, self.y_right - half),
            (self.x_right, self.y_right + half),
            (self.x_left, self.y_left + half),
        ]
    }
}

/// Geometry of one segment between pixel points, including the optional
/// `min_width` floor.
pub fn segment_between(config: &PlotConfig, x0: f64, y0: f64, x1: f64, y1: f64) -> Result<SegmentGeometry> {
    let mut g =
        segment_geometry(SegmentInput { delta_h: (y1 - y0).abs(), delta_w: x1 - x0, h: config.h, p: config.p })?;
    if g.omega < config.min_width {
        g.omega = config.min_width;
        g.vertical_thickness = g.omega / g.alpha.cos();
        g.area = g.length * g.omega;
    }
    Ok(g)
}

/// One quad per record per adjacent axis pair, record-major.
pub fn build_quads(data: &NormalizedDataset, config: &PlotConfig) -> Result<Vec<SegmentQuad>> {
    config.validate()?;
    let xs = layout(config, data.dims())?;
    let mut quads = Vec::with_capacity(data.len() * (data.dims() - 1));
    for (record, values) in data.records().enumerate() {
        for axis in 0..values.len() - 1 {
            let (x_left, x_right) = (xs[axis], xs[axis + 1]);
            let y_left = value_to_y(config, values[axis]);
            let y_right = value_to_y(config, values[axis + 1]);
            let geometry = segment_between(config, x_left, y_left, x_right, y_right)?;
            quads.push(SegmentQuad { record, axis, x_left, x_right, y_left, y_right, geometry });
        }
    }
    Ok(quads)
}
