use std::fmt::Write as _;

use super::{build_quads, layout, value_to_y, PlotConfig};
use crate::data::NormalizedDataset;
use crate::error::Result;

const TICKS: [f64; 3] = [0.0, 0.5, 1.0];

fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for ch in s.chars() {
        match ch {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            c => out.push(c),
        }
    }
    out
}

/// Tick label: up to 6 decimals, trailing zeros dropped.
fn tick_label(v: f64) -> String {
    let s = format!("{v:.6}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.into()
    }
}

/// SVG 1.1 document with one `<line>` per segment. Stroke width is the
/// adjusted perpendicular width; caps are butt. Every numeric attribute is
/// printed with six decimals so identical inputs give identical bytes.
pub fn render_svg(data: &NormalizedDataset, config: &PlotConfig) -> Result<String> {
    let quads = build_quads(data, config)?;
    let (w, h) = (config.width_px, config.height_px);
    let mut out = String::with_capacity(128 + quads.len() * 96);

    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">"
    );
    out.push_str("<rect x=\"0\" y=\"0\" width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n");

    let _ = write!(out, "<g id=\"polylines\" fill=\"none\" stroke=\"{}\" stroke-linecap=\"butt\"", config.color);
    if config.opacity < 1.0 {
        let _ = write!(out, " stroke-opacity=\"{:.6}\"", config.opacity);
    }
    out.push_str(">\n");
    for q in &quads {
        let _ = writeln!(
            out,
            "<line x1=\"{:.6}\" y1=\"{:.6}\" x2=\"{:.6}\" y2=\"{:.6}\" stroke-width=\"{:.6}\"/>",
            q.x_left, q.y_left, q.x_right, q.y_right, q.geometry.omega
        );
    }
    out.push_str("</g>\n");

    if config.draw_axes {
        let xs = layout(config, data.dims())?;
        let (top, bottom) = (value_to_y(config, 1.0), value_to_y(config, 0.0));
        out.push_str(
            "<g id=\"axes\" stroke=\"#555555\" stroke-width=\"1.000000\" font-family=\"sans-serif\" font-size=\"11.000000\">\n",
        );
        for (j, &x) in xs.iter().enumerate() {
            let _ = writeln!(out, "<line x1=\"{x:.6}\" y1=\"{top:.6}\" x2=\"{x:.6}\" y2=\"{bottom:.6}\"/>");
            for t in TICKS {
                let y = value_to_y(config, t);
                let _ =
                    writeln!(out, "<line x1=\"{:.6}\" y1=\"{y:.6}\" x2=\"{:.6}\" y2=\"{y:.6}\"/>", x - 3.0, x + 3.0);
                let _ = writeln!(
                    out,
                    "<text x=\"{:.6}\" y=\"{:.6}\" stroke=\"none\" fill=\"#555555\" text-anchor=\"start\">{}</text>",
                    x + 5.0,
                    y + 4.0,
                    tick_label(data.axis_value_at(j, t))
                );
            }
            let name =
                if data.flipped()[j] { format!("{} \u{2193}", data.names()[j]) } else { data.names()[j].clone() };
            let _ = writeln!(
                out,
                "<text x=\"{x:.6}\" y=\"{:.6}\" stroke=\"none\" fill=\"#000000\" text-anchor=\"middle\">{}</text>",
                bottom + 20.0,
                escape(&name)
            );
        }
        out.push_str("</g>\n");
    }
    out.push_str("</svg>\n");
    Ok(out)
}
