//! Parallel coordinates rendering with slope-dependent line widths.
//!
//! Classical parallel coordinates draw every polyline segment with the same
//! stroke width, so steep segments cover more pixels than flat ones and
//! diagonal clusters look denser than horizontal clusters of the same size.
//! This crate draws each segment with width `h * cos(alpha)^p`, where
//! `alpha` is the segment's slope angle in plot space:
//!
//! * `p = 0` reproduces the classical plot,
//! * `p = 1` gives every segment the same area `delta_w * h`,
//! * `p > 1` also compensates the tighter spacing of parallel steep lines.
//!
//! Modules:
//!
//! * [`geometry`]: closed-form segment geometry.
//! * [`data`]: datasets, CSV, normalization, axis order/flips, generators.
//! * [`render`]: quads, coverage rasterizer, SVG, PNG and PGM output.
//! * [`metrics`]: ink, concentration and distortion measurements.
//! * [`pipeline`]: the dataset → document path shared by the CLI and the
//!   HTTP service.

pub mod data;
pub mod error;
pub mod geometry;
pub mod metrics;
pub mod pipeline;
pub mod render;

pub use error::{Error, FieldError, Result};
