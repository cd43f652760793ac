//! Deterministic SVG drawing of a realization.

use std::fmt::Write;

use num_traits::ToPrimitive;

use super::{Rational, Realization};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Layout {
    /// Coordinates as computed. Thin bands may be invisible.
    Exact,
    /// Each coordinate replaced by its rank among the point coordinates;
    /// rectangle sides between ranks land on half-integers.
    #[default]
    Rank,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SvgStyle {
    pub layout: Layout,
    /// Width of the drawing area in pixels.
    pub width: u32,
    pub height: u32,
    pub point_radius: u32,
    /// Optional color class per vertex.
    pub vertex_colors: Option<Vec<usize>>,
    /// Rectangles drawn emphasized.
    pub highlight: Vec<usize>,
}

impl Default for SvgStyle {
    fn default() -> Self {
        Self {
            layout: Layout::Rank,
            width: 640,
            height: 480,
            point_radius: 4,
            vertex_colors: None,
            highlight: Vec::new(),
        }
    }
}

const PALETTE: [&str; 8] = [
    "#d62728", "#1f77b4", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf",
];

const MARGIN: f64 = 20.0;

struct Axis {
    sorted: Vec<Rational>,
}

impl Axis {
    fn new(mut values: Vec<Rational>) -> Self {
        values.sort();
        Self { sorted: values }
    }

    fn position(&self, q: &Rational, layout: Layout) -> f64 {
        match layout {
            Layout::Exact => q.to_f64().unwrap_or(0.0),
            Layout::Rank => {
                let lt = self.sorted.partition_point(|v| v < q);
                let le = self.sorted.partition_point(|v| v <= q);
                (lt + le) as f64 / 2.0 - 0.5
            }
        }
    }
}

fn num(v: f64) -> String {
    let s = format!("{v:.3}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" { "0".to_string() } else { s.to_string() }
}

pub fn emit_svg(real: &Realization, style: &SvgStyle) -> Result<String> {
    if real.points.is_empty() {
        return Err(Error::EmptyInput);
    }
    let xa = Axis::new(real.points.iter().map(|p| p.x.clone()).collect());
    let ya = Axis::new(real.points.iter().map(|p| p.y.clone()).collect());
    let l = style.layout;

    let mut xs: Vec<f64> = real.points.iter().map(|p| xa.position(&p.x, l)).collect();
    let mut ys: Vec<f64> = real.points.iter().map(|p| ya.position(&p.y, l)).collect();
    for r in &real.rects {
        xs.extend([xa.position(&r.x_lo, l), xa.position(&r.x_hi, l)]);
        ys.extend([ya.position(&r.y_lo, l), ya.position(&r.y_hi, l)]);
    }
    let (x0, x1) = xs.iter().fold((f64::MAX, f64::MIN), |(a, b), &v| (a.min(v), b.max(v)));
    let (y0, y1) = ys.iter().fold((f64::MAX, f64::MIN), |(a, b), &v| (a.min(v), b.max(v)));
    let (w, h) = (style.width as f64, style.height as f64);
    let sx = if x1 > x0 { (w - 2.0 * MARGIN) / (x1 - x0) } else { 1.0 };
    let sy = if y1 > y0 { (h - 2.0 * MARGIN) / (y1 - y0) } else { 1.0 };
    let px = |v: f64| MARGIN + (v - x0) * sx;
    let py = |v: f64| h - MARGIN - (v - y0) * sy;

    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="0 0 {} {}">"#,
        style.width, style.height, style.width, style.height
    )
    .expect("write to string");
    for (e, r) in real.rects.iter().enumerate() {
        let (left, right) = (px(xa.position(&r.x_lo, l)), px(xa.position(&r.x_hi, l)));
        let (top, bottom) = (py(ya.position(&r.y_hi, l)), py(ya.position(&r.y_lo, l)));
        let (stroke, width) = if style.highlight.contains(&e) {
            ("#000000", 2.5)
        } else {
            ("#7f7f7f", 0.8)
        };
        writeln!(
            out,
            r#"<rect data-edge="{e}" x="{}" y="{}" width="{}" height="{}" fill="none" stroke="{stroke}" stroke-width="{}"/>"#,
            num(left),
            num(top),
            num(right - left),
            num(bottom - top),
            num(width)
        )
        .expect("write to string");
    }
    for (v, p) in real.points.iter().enumerate() {
        let fill = match &style.vertex_colors {
            Some(c) => PALETTE[c.get(v).copied().unwrap_or(0) % PALETTE.len()],
            None => "#000000",
        };
        writeln!(
            out,
            r#"<circle data-vertex="{v}" cx="{}" cy="{}" r="{}" fill="{fill}"/>"#,
            num(px(xa.position(&p.x, l))),
            num(py(ya.position(&p.y, l))),
            style.point_radius
        )
        .expect("write to string");
    }
    out.push_str("</svg>\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construction::{build_hkc, Limits};
    use crate::geometry::realize_hkc;

    #[test]
    fn element_counts() {
        for (c, points, rects) in [(1, 2, 1), (2, 12, 14)] {
            let h = build_hkc(2, c, Limits::default()).unwrap();
            let svg = emit_svg(&realize_hkc(&h).unwrap(), &SvgStyle::default()).unwrap();
            assert_eq!(svg.matches("<circle").count(), points);
            assert_eq!(svg.matches("<rect").count(), rects);
        }
    }

    #[test]
    fn deterministic_bytes() {
        let h = build_hkc(2, 2, Limits::default()).unwrap();
        let r = realize_hkc(&h).unwrap();
        for layout in [Layout::Exact, Layout::Rank] {
            let style = SvgStyle {
                layout,
                ..SvgStyle::default()
            };
            assert_eq!(emit_svg(&r, &style).unwrap(), emit_svg(&r.clone(), &style).unwrap());
        }
    }

    #[test]
    fn number_format() {
        assert_eq!(num(1.0), "1");
        assert_eq!(num(0.12345), "0.123");
        assert_eq!(num(-0.0001), "0");
    }
}
