//! Closed-form line geometry of parallel-coordinates segments.
//!
//! A segment joins two adjacent axes that are `delta_w` apart and climbs
//! `delta_h` between them. Its slope angle is `atan(delta_h / delta_w)`.
//! A classical stroke of constant width `w` then has a vertical
//! cross-section of `w * sec(alpha)` and a length of `delta_w * sec(alpha)`,
//! so steep segments consume more ink than flat ones.
//!
//! The correction draws each segment with perpendicular width
//! `omega = h * cos(alpha)^p`. At `p = 1` every segment becomes a
//! parallelogram with vertical side `h` and area `delta_w * h`.
//!
//! Note on notation: `cos⁻¹(α)` in the source formulas denotes the secant
//! `1 / cos(α)`, not `arccos`. Everything here uses the secant.

use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Inputs describing one segment in plot units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SegmentInput {
    /// Absolute vertical difference of the endpoints.
    pub delta_h: f64,
    /// Spacing between the two axes. Must be positive.
    pub delta_w: f64,
    /// Default line height (width of a horizontal line).
    pub h: f64,
    /// Adjustment strength.
    pub p: f64,
}

/// Derived geometry of one segment drawn with the slope-adjusted width.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SegmentGeometry {
    /// Slope angle in radians, in `[0, π/2)`.
    pub alpha: f64,
    pub length: f64,
    /// Perpendicular width `h * cos(alpha)^p`.
    pub omega: f64,
    /// Vertical cross-section of the drawn parallelogram, `omega / cos(alpha)`.
    pub vertical_thickness: f64,
    /// `length * omega`.
    pub area: f64,
}

/// Slope angle of a segment rising `delta_h` over `delta_w`.
pub fn segment_angle(delta_h: f64, delta_w: f64) -> Result<f64> {
    if !delta_w.is_finite() || delta_w <= 0.0 {
        return Err(Error::InvalidGeometry(format!("axis spacing must be positive, got {delta_w}")));
    }
    if !delta_h.is_finite() || delta_h < 0.0 {
        return Err(Error::InvalidGeometry(format!(
            "vertical difference must be finite and non-negative, got {delta_h}"
        )));
    }
    let alpha = (delta_h / delta_w).atan();
    // atan saturates at exactly π/2 for huge ratios; keep the half-open range.
    Ok(if alpha >= FRAC_PI_2 { f64::from_bits(FRAC_PI_2.to_bits() - 1) } else { alpha })
}

/// Slope-adjusted perpendicular width `h * cos(alpha)^p`.
///
/// `p = 0` is the classical constant-width stroke, `p = 1` gives equal
/// segment areas, and `p > 1` over-adjusts.
pub fn slope_width(h: f64, alpha: f64, p: f64) -> f64 {
    if p == 0.0 {
        return h;
    }
    h * alpha.cos().powf(p)
}

/// Vertical extent of a stroke of constant perpendicular width `w`.
pub fn classical_vertical_thickness(w: f64, alpha: f64) -> f64 {
    w / alpha.cos()
}

pub fn segment_length(delta_w: f64, alpha: f64) -> f64 {
    delta_w / alpha.cos()
}

/// Orthogonal distance between two parallel segments whose intersections
/// with an axis are `d_h` apart.
pub fn perpendicular_distance(d_h: f64, alpha: f64) -> f64 {
    d_h * alpha.cos()
}

pub fn segment_geometry(input: SegmentInput) -> Result<SegmentGeometry> {
    if !input.h.is_finite() || input.h <= 0.0 {
        return Err(Error::InvalidGeometry(format!("line height must be positive, got {}", input.h)));
    }
    if !input.p.is_finite() {
        return Err(Error::InvalidGeometry(format!("adjustment strength must be finite, got {}", input.p)));
    }
    let alpha = segment_angle(input.delta_h, input.delta_w)?;
    let length = segment_length(input.delta_w, alpha);
    let omega = slope_width(input.h, alpha, input.p);
    Ok(SegmentGeometry {
        alpha,
        length,
        omega,
        vertical_thickness: classical_vertical_thickness(omega, alpha),
        area: length * omega,
    })
}
