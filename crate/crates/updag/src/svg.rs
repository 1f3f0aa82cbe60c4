//! SVG 1.1 rendering of drawings.

use std::fmt::Write;

use updag_core::drawing::{compute_crossings, Drawing, DrawingError};
use updag_core::geom::Point;

#[derive(Debug, Clone, PartialEq)]
pub struct SvgOptions {
    /// Pixels per drawing unit.
    pub scale: f64,
    pub margin: f64,
    pub vertex_radius: f64,
    pub mark_crossings: bool,
    pub labels: bool,
}

impl Default for SvgOptions {
    fn default() -> Self {
        SvgOptions { scale: 40.0, margin: 20.0, vertex_radius: 6.0, mark_crossings: false, labels: true }
    }
}

/// Deterministic SVG: edges as polylines with arrowheads in edge order, then
/// crossing marks, then vertices as labelled circles in vertex order. The
/// y-axis is flipped so that upward edges point up on screen.
pub fn render_svg(d: &Drawing, opts: &SvgOptions) -> Result<String, DrawingError> {
    let g = d.dag();
    let crossings = if opts.mark_crossings { compute_crossings(d)?.crossings } else { Vec::new() };
    let mut pts: Vec<(f64, f64)> = d.positions().iter().map(Point::to_f64).collect();
    for e in 0..g.edge_count() {
        pts.extend(d.bends(e).iter().map(Point::to_f64));
    }
    let (mut x0, mut x1, mut y0, mut y1) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    if let Some(&(x, y)) = pts.first() {
        (x0, x1, y0, y1) = (x, x, y, y);
    }
    for &(x, y) in &pts {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    let pad = opts.margin + opts.vertex_radius;
    let width = (x1 - x0) * opts.scale + 2.0 * pad;
    let height = (y1 - y0) * opts.scale + 2.0 * pad;
    let tx = |x: f64| (x - x0) * opts.scale + pad;
    let ty = |y: f64| (y1 - y) * opts.scale + pad;
    let mut s = String::new();
    s.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">",
        num(width),
        num(height),
        num(width),
        num(height)
    )
    .unwrap();
    s.push_str(
        "<defs><marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"10\" refY=\"5\" markerWidth=\"8\" \
         markerHeight=\"8\" orient=\"auto\"><path d=\"M 0 0 L 10 5 L 0 10 z\" fill=\"black\"/></marker></defs>\n",
    );
    s.push_str("<g id=\"edges\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\">\n");
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        let route = d.route(e);
        let mut xy: Vec<(f64, f64)> = route.iter().map(|p| (tx(p.to_f64().0), ty(p.to_f64().1))).collect();
        // stop the arrow at the circle's rim
        if let [.., a, b] = xy.as_mut_slice() {
            let (dx, dy) = (b.0 - a.0, b.1 - a.1);
            let len = (dx * dx + dy * dy).sqrt();
            if len > opts.vertex_radius {
                b.0 -= dx / len * opts.vertex_radius;
                b.1 -= dy / len * opts.vertex_radius;
            }
        }
        let points: Vec<String> = xy.iter().map(|&(x, y)| format!("{},{}", num(x), num(y))).collect();
        writeln!(
            s,
            "<polyline class=\"edge\" data-u=\"{u}\" data-v=\"{v}\" points=\"{}\" marker-end=\"url(#arrow)\"/>",
            points.join(" ")
        )
        .unwrap();
    }
    s.push_str("</g>\n");
    if opts.mark_crossings {
        s.push_str("<g id=\"crossings\" fill=\"red\">\n");
        for c in &crossings {
            let (x, y) = c.point.to_f64();
            writeln!(
                s,
                "<circle class=\"crossing\" data-a=\"{}\" data-b=\"{}\" cx=\"{}\" cy=\"{}\" r=\"3\"/>",
                c.edge_a,
                c.edge_b,
                num(tx(x)),
                num(ty(y))
            )
            .unwrap();
        }
        s.push_str("</g>\n");
    }
    s.push_str("<g id=\"vertices\" stroke=\"black\" fill=\"white\">\n");
    for v in 0..g.vertex_count() {
        let (x, y) = d.position(v).to_f64();
        writeln!(
            s,
            "<circle class=\"vertex\" data-id=\"{v}\" cx=\"{}\" cy=\"{}\" r=\"{}\"/>",
            num(tx(x)),
            num(ty(y)),
            num(opts.vertex_radius)
        )
        .unwrap();
    }
    s.push_str("</g>\n");
    if opts.labels && g.vertex_count() > 0 {
        s.push_str("<g id=\"labels\" font-family=\"sans-serif\" font-size=\"10\">\n");
        for v in 0..g.vertex_count() {
            let (x, y) = d.position(v).to_f64();
            writeln!(
                s,
                "<text x=\"{}\" y=\"{}\">{}</text>",
                num(tx(x) + opts.vertex_radius + 2.0),
                num(ty(y) - opts.vertex_radius - 2.0),
                escape(&g.label(v))
            )
            .unwrap();
        }
        s.push_str("</g>\n");
    }
    s.push_str("</svg>\n");
    Ok(s)
}

/// Fixed-precision number without trailing zeros.
fn num(x: f64) -> String {
    let s = format!("{x:.3}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.into()
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}
