//! Dataset to document, shared by every front end so that the same inputs
//! produce the same bytes everywhere.

use serde::{Deserialize, Serialize};

use crate::data::{flip_axis, normalize, reorder_axes, Dataset, NormalizedDataset};
use crate::error::Result;
use crate::metrics::{analytic_report, MetricsReport};
use crate::render::{encode_pgm, encode_png, layout, render_raster, render_svg, ImageFormat, PlotConfig};

/// Axis arrangement applied after normalization.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AxisView {
    /// Output axis `i` shows source dimension `axis_order[i]`. Empty keeps
    /// the source order.
    pub axis_order: Vec<usize>,
    /// Source dimension indices to invert. Listing an index twice cancels.
    pub flips: Vec<usize>,
}

/// Normalizes, flips, then reorders.
pub fn prepare(data: &Dataset, view: &AxisView) -> Result<NormalizedDataset> {
    let mut norm = normalize(data);
    for &j in &view.flips {
        norm = flip_axis(&norm, j)?;
    }
    if !view.axis_order.is_empty() {
        norm = reorder_axes(&norm, &view.axis_order)?;
    }
    Ok(norm)
}

/// Renders an already prepared dataset in `format`.
pub fn encode(data: &NormalizedDataset, config: &PlotConfig, format: ImageFormat) -> Result<Vec<u8>> {
    config.validate()?;
    match format {
        ImageFormat::Svg => Ok(render_svg(data, config)?.into_bytes()),
        ImageFormat::Png | ImageFormat::Pgm => {
            let coverage = render_raster(data, config)?;
            let axes = layout(config, data.dims())?;
            match format {
                ImageFormat::Png => encode_png(&coverage, config, &axes),
                _ => Ok(encode_pgm(&coverage, config, &axes)),
            }
        }
    }
}

pub fn render_document(data: &Dataset, config: &PlotConfig, view: &AxisView, format: ImageFormat) -> Result<Vec<u8>> {
    encode(&prepare(data, view)?, config, format)
}

pub fn metrics_document(data: &Dataset, config: &PlotConfig, view: &AxisView) -> Result<MetricsReport> {
    config.validate()?;
    analytic_report(&prepare(data, view)?, config)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::gen_uniform_noise;

    #[test]
    fn flips_use_source_indices() {
        let ds = Dataset::from_rows(&["a", "b", "c"], &[vec![0.0, 0.0, 0.0], vec![1.0, 2.0, 3.0]], None).unwrap();
        let view = AxisView { axis_order: vec![2, 0, 1], flips: vec![0] };
        let n = prepare(&ds, &view).unwrap();
        assert_eq!(n.names(), &["c", "a", "b"]);
        assert_eq!(n.record(0), &[0.0, 1.0, 0.0]);
        assert_eq!(n.flipped(), &[false, true, false]);
    }

    #[test]
    fn invalid_view_is_rejected() {
        let ds = gen_uniform_noise(3, 3, 1).unwrap();
        assert!(prepare(&ds, &AxisView { axis_order: vec![0, 1], flips: vec![] }).is_err());
        assert!(prepare(&ds, &AxisView { axis_order: vec![], flips: vec![3] }).is_err());
    }

    #[test]
    fn every_format_renders() {
        let ds = gen_uniform_noise(20, 4, 2).unwrap();
        let c = PlotConfig { width_px: 200, height_px: 100, margin_px: 10.0, ..Default::default() };
        for f in [ImageFormat::Svg, ImageFormat::Png, ImageFormat::Pgm] {
            let a = render_document(&ds, &c, &AxisView::default(), f).unwrap();
            assert_eq!(a, render_document(&ds, &c, &AxisView::default(), f).unwrap());
        }
    }

    #[test]
    fn invalid_config_is_rejected() {
        let ds = gen_uniform_noise(2, 2, 2).unwrap();
        let c = PlotConfig { h: 0.0, ..Default::default() };
        assert!(render_document(&ds, &c, &AxisView::default(), ImageFormat::Svg).is_err());
        assert!(metrics_document(&ds, &c, &AxisView::default()).is_err());
    }
}
