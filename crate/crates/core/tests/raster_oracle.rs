//! Rasterizer checks against a supersampled point-in-polygon oracle.

use slopepcp::data::{gen_uniform_noise, normalize, NormalizedDataset};
use slopepcp::render::{build_quads, rasterize, render_raster, render_svg, PlotConfig, SegmentQuad};

const SUPERSAMPLE: usize = 16;

/// Area of the quad inside a `width` x `height` canvas, estimated by
/// testing 16x16 sample points per pixel against the quad's corners.
fn supersampled_ink(q: &SegmentQuad, width: usize, height: usize) -> f64 {
    let v = q.vertices();
    let inside = |x: f64, y: f64| {
        // Convex polygon: the point is on the same side of every edge.
        let mut sign = 0.0;
        for i in 0..4 {
            let (ax, ay) = v[i];
            let (bx, by) = v[(i + 1) % 4];
            let cross = (bx - ax) * (y - ay) - (by - ay) * (x - ax);
            if cross != 0.0 {
                if sign == 0.0 {
                    sign = cross.signum();
                } else if cross.signum() != sign {
                    return false;
                }
            }
        }
        true
    };
    let step = 1.0 / SUPERSAMPLE as f64;
    let mut hits = 0usize;
    for py in 0..height {
        for px in 0..width {
            for sy in 0..SUPERSAMPLE {
                for sx in 0..SUPERSAMPLE {
                    let x = px as f64 + (sx as f64 + 0.5) * step;
                    let y = py as f64 + (sy as f64 + 0.5) * step;
                    if inside(x, y) {
                        hits += 1;
                    }
                }
            }
        }
    }
    hits as f64 * step * step
}

/// Two axes `delta_w` apart with room for a segment at `alpha_deg`.
fn single_segment(delta_w: f64, alpha_deg: f64, h: f64, p: f64) -> (NormalizedDataset, PlotConfig) {
    let delta_h = delta_w * alpha_deg.to_radians().tan();
    let margin = 10.0 + 4.0 * h;
    let axis_h = delta_h.max(10.0) + 1.0;
    let config = PlotConfig {
        width_px: (delta_w + 2.0 * margin) as u32,
        height_px: (axis_h + 2.0 * margin).ceil() as u32,
        margin_px: margin,
        h,
        p,
        draw_axes: false,
        ..Default::default()
    };
    // Recompute the spacing from the integer width so the angle is exact.
    let dw = config.delta_w(2);
    let dv = dw * alpha_deg.to_radians().tan() / config.axis_height();
    let lo = (1.0 - dv) / 2.0;
    let data = NormalizedDataset::from_unit_rows(&["a", "b"], &[vec![lo, lo + dv]], None).unwrap();
    (data, config)
}

#[test]
fn horizontal_segment_matches_oracle() {
    let (data, config) = single_segment(10.0, 0.0, 1.0, 1.0);
    let ink = rasterize(&data, &config).unwrap().total();
    let q = build_quads(&data, &config).unwrap()[0];
    let oracle = supersampled_ink(&q, config.width_px as usize, config.height_px as usize);
    assert!((oracle - 10.0).abs() <= 0.5, "oracle {oracle}");
    assert!((ink - 10.0).abs() <= 0.5, "ink {ink}");
}

#[test]
fn sixty_degree_equal_area_segment() {
    let (data, config) = single_segment(20.0, 60.0, 2.0, 1.0);
    let ink = rasterize(&data, &config).unwrap().total();
    let q = build_quads(&data, &config).unwrap()[0];
    let oracle = supersampled_ink(&q, config.width_px as usize, config.height_px as usize);
    assert!((ink - 40.0).abs() <= 0.03 * 40.0, "ink {ink}");
    assert!((oracle - 40.0).abs() <= 0.03 * 40.0, "oracle {oracle}");
    assert!((ink - oracle).abs() <= 0.03 * oracle);
}

#[test]
fn raster_agrees_with_oracle_across_angles_and_strengths() {
    for &alpha in &[0.0, 15.0, 30.0, 45.0, 60.0, 75.0, 80.0] {
        for &p in &[0.0, 1.0, 2.0] {
            let (data, config) = single_segment(37.0, alpha, 2.0, p);
            let ink = rasterize(&data, &config).unwrap().total();
            let q = build_quads(&data, &config).unwrap()[0];
            let oracle = supersampled_ink(&q, config.width_px as usize, config.height_px as usize);
            assert!((ink - oracle).abs() <= 0.03 * oracle, "alpha {alpha} p {p}: raster {ink} oracle {oracle}");
        }
    }
}

#[test]
fn equal_ink_at_p1_and_secant_growth_at_p0() {
    for &dw in &[20.0, 55.5, 120.0] {
        for alpha in (0..=80).step_by(5).map(f64::from) {
            let (data, config) = single_segment(dw, alpha, 2.0, 1.0);
            let target = config.delta_w(2) * 2.0;
            let ink = rasterize(&data, &config).unwrap().total();
            assert!((0.97..=1.03).contains(&(ink / target)), "P=1 dw {dw} alpha {alpha}: {ink} vs {target}");

            let (data, config) = single_segment(dw, alpha, 2.0, 0.0);
            let target = config.delta_w(2) * 2.0 / alpha.to_radians().cos();
            let ink = rasterize(&data, &config).unwrap().total();
            assert!((0.97..=1.03).contains(&(ink / target)), "P=0 dw {dw} alpha {alpha}: {ink} vs {target}");
        }
    }
}

#[test]
fn empty_dataset_renders_blank() {
    let data = NormalizedDataset::from_unit_rows(&["a", "b", "c"], &[], None).unwrap();
    let buf = render_raster(&data, &PlotConfig::default()).unwrap();
    assert!(buf.cells().iter().all(|&c| c == 0.0));
    assert_eq!((buf.width(), buf.height()), (960, 480));
}

#[test]
fn record_order_does_not_change_the_buffer() {
    let ds = normalize(&gen_uniform_noise(600, 5, 17).unwrap());
    let config = PlotConfig { p: 1.3, ..Default::default() };
    let forward = rasterize(&ds, &config).unwrap();
    let reversed = ds.filter_records(|_| true);
    let n = ds.len();
    // Rebuild with records in reverse and in a stride permutation.
    let rev_rows: Vec<Vec<f64>> = (0..n).rev().map(|i| ds.record(i).to_vec()).collect();
    let stride_rows: Vec<Vec<f64>> = (0..n).map(|i| ds.record((i * 7) % n).to_vec()).collect();
    let names = ["d1", "d2", "d3", "d4", "d5"];
    for rows in [rev_rows, stride_rows] {
        let permuted = NormalizedDataset::from_unit_rows(&names, &rows, None).unwrap();
        assert_eq!(rasterize(&permuted, &config).unwrap(), forward);
    }
    assert_eq!(rasterize(&reversed, &config).unwrap(), forward);
}

#[test]
fn svg_area_matches_raster_ink_without_overlap() {
    // Records stacked far enough apart that no two strokes touch.
    let rows: Vec<Vec<f64>> = (0..8)
        .map(|i| {
            let base = 0.05 + 0.11 * i as f64;
            vec![base, base + 0.04, base, base + 0.02]
        })
        .collect();
    let data = NormalizedDataset::from_unit_rows(&["a", "b", "c", "d"], &rows, None).unwrap();
    for p in [0.0, 1.0, 2.0] {
        let config = PlotConfig { p, h: 3.0, ..Default::default() };
        let analytic: f64 = build_quads(&data, &config).unwrap().iter().map(|q| q.geometry.area).sum();
        let ink = rasterize(&data, &config).unwrap().total();
        assert!((ink - analytic).abs() <= 0.03 * analytic, "p {p}: ink {ink} analytic {analytic}");

        // The SVG strokes carry exactly the analytic widths.
        let svg = render_svg(&data, &config).unwrap();
        let widths: Vec<f64> = svg
            .split("stroke-width=\"")
            .skip(1)
            .map(|s| s[..s.find('"').unwrap()].parse().unwrap())
            .take(rows.len() * 3)
            .collect();
        let quads = build_quads(&data, &config).unwrap();
        for (w, q) in widths.iter().zip(&quads) {
            assert!((w - q.geometry.omega).abs() <= 5e-7);
        }
    }
}

#[test]
fn fractional_axis_positions_keep_ink_equal_to_area() {
    for &margin in &[10.0, 10.25, 10.5, 10.8] {
        for &alpha in &[0.0f64, 30.0, 70.0] {
            let config = PlotConfig {
                width_px: 45,
                height_px: 200,
                margin_px: margin,
                h: 3.0,
                draw_axes: false,
                ..Default::default()
            };
            let dv = config.delta_w(2) * alpha.to_radians().tan() / config.axis_height();
            let lo = (1.0 - dv) / 2.0;
            let data = NormalizedDataset::from_unit_rows(&["a", "b"], &[vec![lo, lo + dv]], None).unwrap();
            let target = config.delta_w(2) * 3.0;
            let ink = rasterize(&data, &config).unwrap().total();
            assert!((ink - target).abs() <= 1e-6 * target, "margin {margin} alpha {alpha}: {ink} vs {target}");
        }
    }
}
