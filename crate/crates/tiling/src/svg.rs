use std::fmt::Write;

use crate::{ShapeKind, Tiling};

/// How tiles are filled.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ColorScheme {
    ByPeriod,
    ByShape,
}

#[derive(Clone, Debug)]
pub struct RenderOptions {
    pub color: ColorScheme,
    pub stroke_width: f64,
    /// Output width in pixels; the height follows the aspect ratio of `X`.
    pub width_px: u32,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions { color: ColorScheme::ByPeriod, stroke_width: 0.002, width_px: 1200 }
    }
}

/// A decimal with 12 significant digits and no trailing zeros.
pub fn fmt_sig12(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return "0".into();
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (11 - magnitude).max(0) as usize;
    let mut s = format!("{x:.decimals$}");
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    if s == "-0" {
        s = "0".into();
    }
    s
}

fn hsl_for_period(period: usize) -> String {
    // Golden-angle hue spacing keeps nearby periods distinguishable.
    let hue = (period as f64 * 137.507_764) % 360.0;
    let light = 45 + (period % 3) * 10;
    format!("hsl({hue:.1},70%,{light}%)")
}

fn shape_color(kind: ShapeKind) -> &'static str {
    match kind {
        ShapeKind::SemiRegularOctagon => "#d7263d",
        ShapeKind::Square => "#1b98e0",
        ShapeKind::RightIsoscelesTriangle => "#f4a259",
        ShapeKind::Other => "#7d7d7d",
    }
}

/// Renders the tiling as an SVG 1.1 document: the outline of `X` as a path
/// and one `polygon` element per tile. The `y` axis points up.
pub fn render_svg(t: &Tiling, opts: &RenderOptions) -> String {
    let s = t.s.to_f64();
    let (x0, x1, y0, y1) = (-1.0 - s, 1.0 + s, -s, s);
    let margin = 0.02 * (x1 - x0);
    let (vx, vy) = (x0 - margin, -(y1 + margin));
    let (vw, vh) = (x1 - x0 + 2.0 * margin, y1 - y0 + 2.0 * margin);
    let height_px = (opts.width_px as f64 * vh / vw).round().max(1.0) as u32;
    let f = fmt_sig12;
    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{}" height="{}" viewBox="{} {} {} {}">"#,
        opts.width_px,
        height_px,
        f(vx),
        f(vy),
        f(vw),
        f(vh)
    );
    let _ = writeln!(out, "<title>Periodic tiles at s = {}</title>", t.s);
    let _ = writeln!(out, r#"<g transform="scale(1,-1)" stroke="black" stroke-width="{}">"#, f(opts.stroke_width));
    let outline: Vec<(f64, f64)> = vec![(1.0 + s, s), (s - 1.0, s), (-1.0 - s, -s), (1.0 - s, -s)];
    let mut d = String::new();
    for (i, (x, y)) in outline.iter().enumerate() {
        let _ = write!(d, "{}{} {} ", if i == 0 { "M" } else { "L" }, f(*x), f(*y));
    }
    let _ = writeln!(out, r#"<path d="{d}Z" fill="white"/>"#);
    for tile in &t.tiles {
        let pts: Vec<String> = tile
            .polygon
            .vertices()
            .iter()
            .map(|p| {
                let (x, y) = p.to_f64();
                format!("{},{}", f(x), f(y))
            })
            .collect();
        let fill = match opts.color {
            ColorScheme::ByPeriod => hsl_for_period(tile.period),
            ColorScheme::ByShape => shape_color(tile.shape).to_string(),
        };
        let _ = writeln!(
            out,
            r#"<polygon points="{}" fill="{}" data-period="{}" data-shape="{}"/>"#,
            pts.join(" "),
            fill,
            tile.period,
            tile.shape.name()
        );
    }
    let _ = writeln!(out, "</g>");
    let _ = writeln!(out, "</svg>");
    out
}
