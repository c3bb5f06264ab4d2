//! Standalone SVG rendering of a ratio curve.

use std::fmt::Write as _;
use std::path::Path;

use cornerscan::circle::CurveSample;

use crate::output::text;
use crate::CliError;

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 450.0;
const MARGIN_LEFT: f64 = 80.0;
const MARGIN_RIGHT: f64 = 20.0;
const MARGIN_TOP: f64 = 20.0;
const MARGIN_BOTTOM: f64 = 60.0;

/// Renders the curve as one polyline over labelled axes. Same input, same bytes.
pub fn render_svg(curve: &[CurveSample]) -> Result<String, CliError> {
    if curve.is_empty() {
        return Err(CliError::Domain("cannot plot an empty curve".into()));
    }
    let (mut x_min, mut x_max) = (f64::INFINITY, f64::NEG_INFINITY);
    let (mut y_min, mut y_max) = (f64::INFINITY, f64::NEG_INFINITY);
    for s in curve {
        x_min = x_min.min(s.d);
        x_max = x_max.max(s.d);
        y_min = y_min.min(s.c_opt);
        y_max = y_max.max(s.c_opt);
    }
    if x_max == x_min {
        x_max = x_min + 1.0;
    }
    if y_max == y_min {
        y_max = y_min + 1.0;
    }
    let plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
    let plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;
    let sx = |x: f64| MARGIN_LEFT + (x - x_min) / (x_max - x_min) * plot_w;
    let sy = |y: f64| MARGIN_TOP + (y_max - y) / (y_max - y_min) * plot_h;
    let x_axis = MARGIN_TOP + plot_h;

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(svg, r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    let _ = writeln!(
        svg,
        r#"<line x1="{MARGIN_LEFT}" y1="{x_axis}" x2="{}" y2="{x_axis}" stroke="black"/>"#,
        WIDTH - MARGIN_RIGHT
    );
    let _ = writeln!(svg, r#"<line x1="{MARGIN_LEFT}" y1="{MARGIN_TOP}" x2="{MARGIN_LEFT}" y2="{x_axis}" stroke="black"/>"#);

    let label = |svg: &mut String, x: f64, y: f64, anchor: &str, body: &str| {
        let _ = writeln!(
            svg,
            r#"<text x="{x:.1}" y="{y:.1}" font-family="sans-serif" font-size="12" text-anchor="{anchor}">{body}</text>"#
        );
    };
    label(&mut svg, MARGIN_LEFT, x_axis + 18.0, "middle", &text(x_min));
    label(&mut svg, WIDTH - MARGIN_RIGHT, x_axis + 18.0, "middle", &text(x_max));
    label(&mut svg, MARGIN_LEFT - 6.0, x_axis + 4.0, "end", &text(y_min));
    label(&mut svg, MARGIN_LEFT - 6.0, MARGIN_TOP + 4.0, "end", &text(y_max));
    label(&mut svg, MARGIN_LEFT + plot_w / 2.0, HEIGHT - 15.0, "middle", "distance to corner d");
    let _ = writeln!(
        svg,
        r#"<text x="20" y="{:.1}" font-family="sans-serif" font-size="12" text-anchor="middle" transform="rotate(-90 20 {:.1})">optimal competitive ratio c</text>"#,
        MARGIN_TOP + plot_h / 2.0,
        MARGIN_TOP + plot_h / 2.0
    );

    let vertices: Vec<String> = curve.iter().map(|s| format!("{:.3},{:.3}", sx(s.d), sy(s.c_opt))).collect();
    let _ = writeln!(
        svg,
        r#"<polyline fill="none" stroke="steelblue" stroke-width="1.5" points="{}"/>"#,
        vertices.join(" ")
    );
    svg.push_str("</svg>\n");
    Ok(svg)
}

/// Writes the curve plot to `path`. Nothing is written for an empty curve.
pub fn emit_plot(curve: &[CurveSample], path: &Path) -> Result<(), CliError> {
    let svg = render_svg(curve)?;
    std::fs::write(path, svg).map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
}
