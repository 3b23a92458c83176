use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, FieldError, Result};

/// Largest accepted plot side, in pixels.
pub const MAX_SIDE_PX: u32 = 8192;

/// Adjustment strengths outside this range still render but are unusual.
pub const RECOMMENDED_P: std::ops::RangeInclusive<f64> = 0.0..=2.0;

/// 8-bit RGB colour, written as `#rrggbb`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rgb(pub u8, pub u8, pub u8);

impl Rgb {
    pub const BLACK: Rgb = Rgb(0, 0, 0);
    pub const WHITE: Rgb = Rgb(255, 255, 255);

    pub fn is_gray(self) -> bool {
        self.0 == self.1 && self.1 == self.2
    }

    /// Rec. 601 luma, rounded half up.
    pub fn luma(self) -> u8 {
        let y = 299 * self.0 as u32 + 587 * self.1 as u32 + 114 * self.2 as u32;
        ((y + 500) / 1000) as u8
    }
}

impl fmt::Display for Rgb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{:02x}{:02x}{:02x}", self.0, self.1, self.2)
    }
}

impl FromStr for Rgb {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let hex = s.strip_prefix('#').unwrap_or(s);
        if hex.len() != 6 || !hex.bytes().all(|b| b.is_ascii_hexdigit()) {
            return Err(format!("expected #rrggbb, got {s:?}"));
        }
        let byte = |i: usize| u8::from_str_radix(&hex[i..i + 2], 16).unwrap();
        Ok(Rgb(byte(0), byte(2), byte(4)))
    }
}

impl Serialize for Rgb {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rgb {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Plot geometry and stroke parameters shared by every renderer.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PlotConfig {
    pub width_px: u32,
    pub height_px: u32,
    pub margin_px: f64,
    /// Default line height: the stroke width of a horizontal segment.
    pub h: f64,
    /// Adjustment strength; 0 is classical rendering, 1 equalizes areas.
    pub p: f64,
    pub color: Rgb,
    pub opacity: f64,
    pub draw_axes: bool,
    /// Lower bound applied to the adjusted width. 0 disables it.
    pub min_width: f64,
}

impl Default for PlotConfig {
    fn default() -> Self {
        Self {
            width_px: 960,
            height_px: 480,
            margin_px: 40.0,
            h: 2.0,
            p: 1.0,
            color: Rgb::BLACK,
            opacity: 1.0,
            draw_axes: true,
            min_width: 0.0,
        }
    }
}

impl PlotConfig {
    pub fn axis_height(&self) -> f64 {
        self.height_px as f64 - 2.0 * self.margin_px
    }

    /// Horizontal spacing between adjacent axes for `d` dimensions.
    pub fn delta_w(&self, d: usize) -> f64 {
        (self.width_px as f64 - 2.0 * self.margin_px) / (d.max(2) - 1) as f64
    }

    pub fn min_width_active(&self) -> bool {
        self.min_width > 0.0
    }

    /// Whether `p` lies in the commonly useful range `[0, 2]`.
    pub fn p_in_recommended_range(&self) -> bool {
        RECOMMENDED_P.contains(&self.p)
    }

    /// Checks every field and reports all failures at once.
    pub fn validate(&self) -> Result<()> {
        let mut errs = Vec::new();
        for (field, v) in [("width_px", self.width_px), ("height_px", self.height_px)] {
            if v == 0 || v > MAX_SIDE_PX {
                errs.push(FieldError::new(field, format!("must be in 1..={MAX_SIDE_PX}, got {v}")));
            }
        }
        if !self.margin_px.is_finite() || self.margin_px < 0.0 {
            errs.push(FieldError::new("margin_px", "must be finite and >= 0"));
        } else if 2.0 * self.margin_px >= self.width_px.min(self.height_px) as f64 {
            errs.push(FieldError::new("margin_px", "leaves no room for the plot"));
        }
        if !self.h.is_finite() || self.h <= 0.0 {
            errs.push(FieldError::new("h", format!("must be finite and > 0, got {}", self.h)));
        }
        if !self.p.is_finite() {
            errs.push(FieldError::new("p", format!("must be finite, got {}", self.p)));
        }
        if !(0.0..=1.0).contains(&self.opacity) {
            errs.push(FieldError::new("opacity", format!("must be in [0, 1], got {}", self.opacity)));
        }
        if !self.min_width.is_finite() || self.min_width < 0.0 {
            errs.push(FieldError::new("min_width", format!("must be finite and >= 0, got {}", self.min_width)));
        }
        if errs.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidConfig(errs))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid() {
        let c = PlotConfig::default();
        c.validate().unwrap();
        assert_eq!(c.axis_height(), 400.0);
        assert_eq!(c.delta_w(5), 220.0);
    }

    #[test]
    fn collects_all_field_errors() {
        let c = PlotConfig { width_px: 0, h: -1.0, p: f64::NAN, opacity: 2.0, ..Default::default() };
        let Err(Error::InvalidConfig(fields)) = c.validate() else { panic!() };
        let names: Vec<_> = fields.iter().map(|f| f.field.as_str()).collect();
        assert!(names.contains(&"width_px"));
        assert!(names.contains(&"h"));
        assert!(names.contains(&"p"));
        assert!(names.contains(&"opacity"));
    }

    #[test]
    fn margin_must_leave_room() {
        let c = PlotConfig { width_px: 100, height_px: 60, margin_px: 30.0, ..Default::default() };
        assert!(c.validate().is_err());
    }

    #[test]
    fn rgb_parsing() {
        assert_eq!("#1f3A93".parse::<Rgb>().unwrap(), Rgb(0x1f, 0x3a, 0x93));
        assert_eq!("ffffff".parse::<Rgb>().unwrap(), Rgb::WHITE);
        assert!("#12345".parse::<Rgb>().is_err());
        assert_eq!(Rgb(1, 2, 255).to_string(), "#0102ff");
        assert_eq!(Rgb::WHITE.luma(), 255);
        assert_eq!(Rgb::BLACK.luma(), 0);
    }

    #[test]
    fn json_round_trip_and_partial_documents() {
        let c = PlotConfig { p: 2.0, color: Rgb(10, 20, 30), ..Default::default() };
        let json = serde_json::to_string(&c).unwrap();
        assert_eq!(serde_json::from_str::<PlotConfig>(&json).unwrap(), c);
        let partial: PlotConfig = serde_json::from_str(r#"{"p": 0.5}"#).unwrap();
        assert_eq!(partial, PlotConfig { p: 0.5, ..Default::default() });
        assert!(serde_json::from_str::<PlotConfig>(r#"{"q": 1}"#).is_err());
    }
}
