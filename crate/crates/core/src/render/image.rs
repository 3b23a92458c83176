//! PNG and PGM encoding of coverage buffers.
//!
//! Each channel is `base + (color - base) * a` rounded half up, where `a`
//! is coverage times opacity and `base` is white (or the axis grey on axis
//! pixels when axes are drawn). PGM output is binary `P5`, maxval 255, with
//! the colour reduced to its Rec. 601 luma.

use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{value_to_y, CoverageBuffer, PlotConfig};
use crate::error::{Error, Result};

const AXIS_GRAY: u8 = 0x55;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ImageFormat {
    Svg,
    Png,
    Pgm,
}

impl ImageFormat {
    pub fn extension(self) -> &'static str {
        match self {
            ImageFormat::Svg => "svg",
            ImageFormat::Png => "png",
            ImageFormat::Pgm => "pgm",
        }
    }

    pub fn mime(self) -> &'static str {
        match self {
            ImageFormat::Svg => "image/svg+xml",
            ImageFormat::Png => "image/png",
            ImageFormat::Pgm => "image/x-portable-graymap",
        }
    }
}

impl FromStr for ImageFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "svg" => Ok(ImageFormat::Svg),
            "png" => Ok(ImageFormat::Png),
            "pgm" => Ok(ImageFormat::Pgm),
            _ => Err(format!("unknown format {s:?}; expected svg, png or pgm")),
        }
    }
}

fn blend(base: u8, color: u8, a: f64) -> u8 {
    let v = base as f64 + (color as f64 - base as f64) * a;
    (v + 0.5).floor().clamp(0.0, 255.0) as u8
}

/// Per-pixel base intensity: white, or axis grey under the axis lines.
fn base_mask(buffer: &CoverageBuffer, config: &PlotConfig, axes_x: &[f64]) -> Vec<bool> {
    let (w, h) = (buffer.width(), buffer.height());
    let mut mask = vec![false; w * h];
    if !config.draw_axes {
        return mask;
    }
    let top = value_to_y(config, 1.0).floor().max(0.0) as usize;
    let bottom = (value_to_y(config, 0.0).ceil() as usize).min(h);
    for &x in axes_x {
        let col = (x.floor().max(0.0) as usize).min(w.saturating_sub(1));
        for row in top..bottom {
            mask[row * w + col] = true;
        }
    }
    mask
}

fn pixels(buffer: &CoverageBuffer, config: &PlotConfig, axes_x: &[f64], channels: usize) -> Vec<u8> {
    let mask = base_mask(buffer, config, axes_x);
    let color = config.color;
    let mut out = Vec::with_capacity(buffer.cells().len() * channels);
    for (&c, &on_axis) in buffer.cells().iter().zip(&mask) {
        let a = c * config.opacity;
        let base = if on_axis { AXIS_GRAY } else { 255 };
        if channels == 1 {
            out.push(blend(base, color.luma(), a));
        } else {
            out.extend([blend(base, color.0, a), blend(base, color.1, a), blend(base, color.2, a)]);
        }
    }
    out
}

/// 8-bit PNG; greyscale when the stroke colour is grey, RGB otherwise.
pub fn encode_png(buffer: &CoverageBuffer, config: &PlotConfig, axes_x: &[f64]) -> Result<Vec<u8>> {
    let gray = config.color.is_gray();
    let data = pixels(buffer, config, axes_x, if gray { 1 } else { 3 });
    let mut out = Vec::new();
    {
        let mut enc = png::Encoder::new(&mut out, buffer.width() as u32, buffer.height() as u32);
        enc.set_color(if gray { png::ColorType::Grayscale } else { png::ColorType::Rgb });
        enc.set_depth(png::BitDepth::Eight);
        let mut writer = enc.write_header().map_err(|e| Error::Encode(e.to_string()))?;
        writer.write_image_data(&data).map_err(|e| Error::Encode(e.to_string()))?;
    }
    Ok(out)
}

/// Binary PGM (`P5`).
pub fn encode_pgm(buffer: &CoverageBuffer, config: &PlotConfig, axes_x: &[f64]) -> Vec<u8> {
    let mut out = format!("P5\n{} {}\n255\n", buffer.width(), buffer.height()).into_bytes();
    out.extend(pixels(buffer, config, axes_x, 1));
    out
}

/// Encodes `buffer` as PNG or PGM and writes it to `path`.
pub fn write_image(
    path: &Path,
    buffer: &CoverageBuffer,
    config: &PlotConfig,
    format: ImageFormat,
    axes_x: &[f64],
) -> Result<()> {
    let bytes = match format {
        ImageFormat::Png => encode_png(buffer, config, axes_x)?,
        ImageFormat::Pgm => encode_pgm(buffer, config, axes_x),
        ImageFormat::Svg => return Err(Error::Encode("SVG is rendered from data, not from a raster".into())),
    };
    std::fs::write(path, bytes).map_err(|e| Error::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::render::Rgb;

    fn no_axes() -> PlotConfig {
        PlotConfig { draw_axes: false, ..Default::default() }
    }

    fn pgm_pixels(bytes: &[u8]) -> &[u8] {
        // Header is three newline-terminated lines.
        let mut nl = 0;
        let start = bytes.iter().position(|&b| {
            if b == b'\n' {
                nl += 1;
            }
            nl == 3
        });
        &bytes[start.unwrap() + 1..]
    }

    #[test]
    fn empty_buffer_is_white() {
        let b = CoverageBuffer::filled(4, 3, 0.0);
        let pgm = encode_pgm(&b, &no_axes(), &[]);
        assert!(pgm.starts_with(b"P5\n4 3\n255\n"));
        assert!(pgm_pixels(&pgm).iter().all(|&p| p == 255));
    }

    #[test]
    fn full_buffer_is_stroke_colour() {
        let b = CoverageBuffer::filled(2, 2, 1.0);
        let c = PlotConfig { color: Rgb(10, 200, 30), ..no_axes() };
        let px = pixels(&b, &c, &[], 3);
        assert_eq!(px, [10, 200, 30].repeat(4));
        assert!(pgm_pixels(&encode_pgm(&b, &no_axes(), &[])).iter().all(|&p| p == 0));
    }

    #[test]
    fn half_coverage_rounds_half_up() {
        let b = CoverageBuffer::filled(1, 1, 0.5);
        assert_eq!(pgm_pixels(&encode_pgm(&b, &no_axes(), &[])), &[128]);
    }

    #[test]
    fn axes_paint_grey_base() {
        let c = PlotConfig { width_px: 10, height_px: 10, margin_px: 2.0, ..Default::default() };
        let b = CoverageBuffer::filled(10, 10, 0.0);
        let px = pixels(&b, &c, &[2.0, 8.0], 1);
        assert_eq!(px[5 * 10 + 2], AXIS_GRAY);
        assert_eq!(px[5 * 10 + 8], AXIS_GRAY);
        assert_eq!(px[5 * 10 + 5], 255);
        assert_eq!(px[2], 255, "above the axis top");
    }

    #[test]
    fn png_decodes_back() {
        let b = CoverageBuffer::from_cells(3, 1, vec![0.0, 0.5, 1.0]).unwrap();
        let bytes = encode_png(&b, &no_axes(), &[]).unwrap();
        let dec = png::Decoder::new(bytes.as_slice());
        let mut reader = dec.read_info().unwrap();
        let mut buf = vec![0; reader.output_buffer_size()];
        let info = reader.next_frame(&mut buf).unwrap();
        assert_eq!(info.color_type, png::ColorType::Grayscale);
        assert_eq!(&buf[..3], &[255, 128, 0]);
    }

    #[test]
    fn write_image_reports_path() {
        let b = CoverageBuffer::filled(1, 1, 0.0);
        let err = write_image(Path::new("/nonexistent/dir/x.pgm"), &b, &no_axes(), ImageFormat::Pgm, &[]).unwrap_err();
        assert!(err.to_string().contains("/nonexistent/dir/x.pgm"));
    }

    #[test]
    fn format_parsing() {
        assert_eq!("PNG".parse::<ImageFormat>().unwrap(), ImageFormat::Png);
        assert!("gif".parse::<ImageFormat>().is_err());
    }
}
