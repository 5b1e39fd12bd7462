//! SVG output for drawings and stub assignments.

use std::fmt::Write as _;

use crate::geometry::Point;
use crate::graph::{GeometricGraph, StubAssignment};
use crate::number::to_f64;

#[derive(Clone, Debug, PartialEq)]
pub struct RenderStyle {
    pub stub_width: f64,
    pub stub_color: String,
    /// Draw every full edge faintly underneath its stubs.
    pub ghost_edges: bool,
    pub ghost_color: String,
    pub vertex_radius: f64,
    pub vertex_color: String,
    /// Canvas margin in output units.
    pub padding: f64,
    /// Output units per drawing unit; must be positive.
    pub scale: f64,
}

impl Default for RenderStyle {
    fn default() -> Self {
        RenderStyle {
            stub_width: 1.5,
            stub_color: "#1f4e9c".to_string(),
            ghost_edges: false,
            ghost_color: "#c8c8c8".to_string(),
            vertex_radius: 3.0,
            vertex_color: "#222222".to_string(),
            padding: 10.0,
            scale: 40.0,
        }
    }
}

fn num(x: f64) -> String {
    let s = format!("{x:.4}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".to_string()
    } else {
        s.to_string()
    }
}

/// Renders `g` with the stubs of `stubs`, or with every edge drawn in full
/// (as two half-length stubs) when no assignment is given.
///
/// Each stub becomes one `<line>` in the `stubs` group, so an edge that is not
/// erased contributes exactly two lines. The output depends only on the inputs.
pub fn render_svg(
    g: &GeometricGraph,
    stubs: Option<&StubAssignment>,
    style: &RenderStyle,
) -> String {
    assert!(style.scale > 0.0, "scale must be positive");
    let points: Vec<(f64, f64)> = g
        .vertices()
        .iter()
        .map(|p: &Point| (to_f64(&p.x), to_f64(&p.y)))
        .collect();
    let (min_x, max_x) = extent(points.iter().map(|p| p.0));
    let (min_y, max_y) = extent(points.iter().map(|p| p.1));
    let width = (max_x - min_x) * style.scale + 2.0 * style.padding;
    let height = (max_y - min_y) * style.scale + 2.0 * style.padding;
    // SVG's y axis points down.
    let map = |(x, y): (f64, f64)| {
        (
            (x - min_x) * style.scale + style.padding,
            (max_y - y) * style.scale + style.padding,
        )
    };

    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">",
        num(width),
        num(height),
        num(width),
        num(height)
    );

    if style.ghost_edges {
        let _ = writeln!(
            out,
            "<g id=\"edges\" stroke=\"{}\" stroke-width=\"{}\">",
            style.ghost_color,
            num(style.stub_width / 2.0)
        );
        for &(u, v) in g.edges() {
            line(&mut out, map(points[u]), map(points[v]));
        }
        out.push_str("</g>\n");
    }

    let _ = writeln!(
        out,
        "<g id=\"stubs\" stroke=\"{}\" stroke-width=\"{}\" stroke-linecap=\"butt\">",
        style.stub_color,
        num(style.stub_width)
    );
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        let fraction = match stubs {
            Some(s) if s.is_erased(e) => continue,
            Some(s) => to_f64(s.fraction(e)),
            None => 0.5,
        };
        for (from, to) in [(points[u], points[v]), (points[v], points[u])] {
            let tip = (
                from.0 + fraction * (to.0 - from.0),
                from.1 + fraction * (to.1 - from.1),
            );
            line(&mut out, map(from), map(tip));
        }
    }
    out.push_str("</g>\n");

    let _ = writeln!(out, "<g id=\"vertices\" fill=\"{}\">", style.vertex_color);
    for &p in &points {
        let (x, y) = map(p);
        let _ = writeln!(
            out,
            "<circle cx=\"{}\" cy=\"{}\" r=\"{}\"/>",
            num(x),
            num(y),
            num(style.vertex_radius)
        );
    }
    out.push_str("</g>\n</svg>\n");
    out
}

fn extent(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = values.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
        (lo.min(v), hi.max(v))
    });
    if lo > hi {
        (0.0, 0.0)
    } else {
        (lo, hi)
    }
}

fn line(out: &mut String, a: (f64, f64), b: (f64, f64)) {
    let _ = writeln!(
        out,
        "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>",
        num(a.0),
        num(a.1),
        num(b.0),
        num(b.1)
    );
}
