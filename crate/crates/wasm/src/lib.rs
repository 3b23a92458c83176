//! Browser bindings: load a preset or CSV into a [`Demo`], then render it
//! to SVG or measure it at any adjustment strength.
//!
//! Build with `wasm-bindgen --target web`; `www/index.html` is the page.

use slopepcp::data::{load_csv, preset, preset_names, Dataset};
use slopepcp::metrics::MetricsReport;
use slopepcp::pipeline::{metrics_document, render_document, AxisView};
use slopepcp::render::{ImageFormat, PlotConfig};
use wasm_bindgen::prelude::*;

/// Plot settings the page controls.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Controls {
    pub p: f64,
    pub h: f64,
    pub width_px: u32,
    pub height_px: u32,
}

impl Controls {
    fn config(self) -> PlotConfig {
        PlotConfig { p: self.p, h: self.h, width_px: self.width_px, height_px: self.height_px, ..Default::default() }
    }
}

/// One loaded dataset.
#[wasm_bindgen]
pub struct Demo {
    data: Dataset,
}

impl Demo {
    pub fn load_preset(name: &str) -> slopepcp::Result<Self> {
        Ok(Self { data: preset(name)?.generate()? })
    }

    pub fn load_csv(text: &str) -> slopepcp::Result<Self> {
        Ok(Self { data: load_csv(text.as_bytes())? })
    }

    pub fn svg(&self, controls: Controls) -> slopepcp::Result<String> {
        let bytes = render_document(&self.data, &controls.config(), &AxisView::default(), ImageFormat::Svg)?;
        Ok(String::from_utf8(bytes).expect("SVG is UTF-8"))
    }

    pub fn metrics(&self, controls: Controls) -> slopepcp::Result<MetricsReport> {
        metrics_document(&self.data, &controls.config(), &AxisView::default())
    }

    pub fn dataset(&self) -> &Dataset {
        &self.data
    }
}

fn js_err(e: slopepcp::Error) -> JsError {
    JsError::new(&e.to_string())
}

#[wasm_bindgen]
impl Demo {
    /// Generates a built-in preset.
    #[wasm_bindgen(js_name = fromPreset)]
    pub fn from_preset(name: &str) -> Result<Demo, JsError> {
        Self::load_preset(name).map_err(js_err)
    }

    /// Parses CSV text; a `label` column is optional.
    #[wasm_bindgen(js_name = fromCsv)]
    pub fn from_csv(text: &str) -> Result<Demo, JsError> {
        Self::load_csv(text).map_err(js_err)
    }

    /// Renders to an SVG document.
    #[wasm_bindgen(js_name = renderSvg)]
    pub fn render_svg(&self, p: f64, h: f64, width: u32, height: u32) -> Result<String, JsError> {
        self.svg(Controls { p, h, width_px: width, height_px: height }).map_err(js_err)
    }

    /// Computes the metrics report as JSON.
    #[wasm_bindgen(js_name = metricsJson)]
    pub fn metrics_json(&self, p: f64, h: f64, width: u32, height: u32) -> Result<String, JsError> {
        self.metrics(Controls { p, h, width_px: width, height_px: height }).map(|r| r.to_json()).map_err(js_err)
    }

    /// The dataset as CSV.
    #[wasm_bindgen(js_name = toCsv)]
    pub fn to_csv(&self) -> String {
        self.data.to_csv()
    }

    #[wasm_bindgen(getter)]
    pub fn records(&self) -> usize {
        self.data.len()
    }

    #[wasm_bindgen(getter)]
    pub fn dimensions(&self) -> usize {
        self.data.dims()
    }
}

/// Names of the built-in presets, comma-separated.
#[wasm_bindgen(js_name = presetNames)]
pub fn preset_list() -> String {
    preset_names().join(",")
}
