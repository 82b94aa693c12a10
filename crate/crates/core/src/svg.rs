//! Deterministic SVG rendering of a domain and its analysis.

use std::fmt::Write as _;
use std::path::Path;

use crate::analysis::AnalysisReport;
use crate::characteristic::PlanarDirection;
use crate::cones::Sector2;
use crate::domain::{point_f64, ExteriorDiagnostic, PlanarDomain};
use crate::error::Result;
use crate::io::write_text;

const SIZE: f64 = 480.0;

/// Maps domain coordinates to pixels with `y` pointing up.
struct Frame {
    x0: f64,
    y1: f64,
    scale: f64,
    pad: f64,
    width: f64,
    height: f64,
}

impl Frame {
    fn new(domain: &PlanarDomain) -> Self {
        let [x0, y0, x1, y1] = domain.bbox();
        let span = (x1 - x0).max(y1 - y0).max(f64::MIN_POSITIVE);
        let pad = 0.15 * span;
        let scale = SIZE / (span + 2.0 * pad);
        Self { x0, y1, scale, pad, width: (x1 - x0 + 2.0 * pad) * scale, height: (y1 - y0 + 2.0 * pad) * scale }
    }

    fn px(&self, p: [f64; 2]) -> (f64, f64) {
        ((p[0] - self.x0 + self.pad) * self.scale, (self.y1 + self.pad - p[1]) * self.scale)
    }

    /// Domain-space corners of the drawing area.
    fn corners(&self) -> [[f64; 2]; 4] {
        let lo = [self.x0 - self.pad, self.y1 + self.pad - self.height / self.scale];
        let hi = [self.x0 - self.pad + self.width / self.scale, self.y1 + self.pad];
        [lo, [hi[0], lo[1]], hi, [lo[0], hi[1]]]
    }
}

fn num(x: f64) -> String {
    let s = format!("{x:.3}");
    if s == "-0.000" {
        "0.000".into()
    } else {
        s
    }
}

fn wedge(out: &mut String, frame: &Frame, at: [f64; 2], sector: &Sector2, r: f64) {
    let (cx, cy) = frame.px(at);
    let point = |a: f64| (cx + r * a.cos(), cy - r * a.sin());
    match sector {
        Sector2::Zero => {}
        Sector2::Full => {
            let _ = writeln!(out, r#"    <circle class="avoidance" cx="{}" cy="{}" r="{}"/>"#, num(cx), num(cy), num(r));
        }
        Sector2::Ray(d) => {
            let u = d.unit_f64();
            let (ex, ey) = (cx + r * u[0], cy - r * u[1]);
            let _ = writeln!(out, r#"    <line class="avoidance" x1="{}" y1="{}" x2="{}" y2="{}"/>"#, num(cx), num(cy), num(ex), num(ey));
        }
        Sector2::Arc { .. } => {
            let Some((a, b)) = sector.angles() else { return };
            let (sx, sy) = point(a);
            let (ex, ey) = point(b);
            let large = if b - a > std::f64::consts::PI { 1 } else { 0 };
            let _ = writeln!(
                out,
                r#"    <path class="avoidance" d="M {} {} L {} {} A {} {} 0 {large} 0 {} {} Z"/>"#,
                num(cx),
                num(cy),
                num(sx),
                num(sy),
                num(r),
                num(r),
                num(ex),
                num(ey)
            );
        }
    }
}

/// Polygon, direction rose, sweep witnesses and failing exterior-cone
/// samples. Layers without content are omitted.
pub fn render_svg(domain: &PlanarDomain, report: &AnalysisReport) -> String {
    let f = Frame::new(domain);
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#,
        w = num(f.width),
        h = num(f.height)
    );
    out.push_str(concat!(
        "  <style>\n",
        "    .domain { fill: #dfe8f1; stroke: #24476b; stroke-width: 1.5; fill-rule: evenodd; }\n",
        "    .rose { stroke: #7a4f9a; stroke-width: 1.2; }\n",
        "    .witness-line { stroke: #c0392b; stroke-width: 1; stroke-dasharray: 6 4; }\n",
        "    .witness-chord { stroke: #c0392b; stroke-width: 3.5; }\n",
        "    .avoidance { fill: #f5b041; fill-opacity: 0.45; stroke: #b9770e; stroke-width: 0.8; }\n",
        "    .blocked { fill: #b9770e; }\n",
        "  </style>\n"
    ));

    out.push_str("  <g id=\"domain\">\n");
    let mut d = String::new();
    for region in domain.regions() {
        for ring in region.rings() {
            for (i, p) in ring.vertices().iter().enumerate() {
                let (x, y) = f.px(point_f64(p));
                let _ = write!(d, "{}{} {} ", if i == 0 { "M " } else { "L " }, num(x), num(y));
            }
            d.push_str("Z ");
        }
    }
    let _ = writeln!(out, r#"    <path class="domain" d="{}"/>"#, d.trim_end());
    out.push_str("  </g>\n");

    if !report.characteristic.is_empty() {
        let r = 0.8 * f.pad * f.scale;
        let (cx, cy) = (f.width - r - 4.0, r + 4.0);
        out.push_str("  <g id=\"rose\">\n");
        for n in &report.characteristic {
            let u = n.unit_f64();
            let _ = writeln!(
                out,
                r#"    <line class="rose" data-direction="{}" x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
                n,
                num(cx),
                num(cy),
                num(cx + r * u[0]),
                num(cy - r * u[1])
            );
        }
        out.push_str("  </g>\n");
    }

    if !report.supports.witnesses.is_empty() {
        out.push_str("  <g id=\"witnesses\">\n");
        for w in &report.supports.witnesses {
            let u = w.direction.unit_f64();
            let t = [-u[1], u[0]];
            let base = [w.offset * u[0], w.offset * u[1]];
            let along: Vec<f64> = f.corners().iter().map(|c| (c[0] - base[0]) * t[0] + (c[1] - base[1]) * t[1]).collect();
            let lo = along.iter().cloned().fold(f64::INFINITY, f64::min);
            let hi = along.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            let (x1, y1) = f.px([base[0] + lo * t[0], base[1] + lo * t[1]]);
            let (x2, y2) = f.px([base[0] + hi * t[0], base[1] + hi * t[1]]);
            let _ = writeln!(
                out,
                r#"    <line class="witness-line" data-direction="{}" data-offset="{:.12}" x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
                w.direction,
                w.offset,
                num(x1),
                num(y1),
                num(x2),
                num(y2)
            );
            for [a, b] in w.chord_points() {
                let (x1, y1) = f.px(a);
                let (x2, y2) = f.px(b);
                let _ = writeln!(
                    out,
                    r#"    <line class="witness-chord" x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
                    num(x1),
                    num(y1),
                    num(x2),
                    num(y2)
                );
            }
        }
        out.push_str("  </g>\n");
    }

    if !report.exterior_failures.is_empty() {
        let r = 0.35 * f.pad * f.scale;
        out.push_str("  <g id=\"exterior\">\n");
        for (x0, diag) in &report.exterior_failures {
            let at = point_f64(x0);
            if let ExteriorDiagnostic::Fail { avoidance, .. } = diag {
                for s in avoidance {
                    wedge(&mut out, &f, at, s, r);
                }
            }
            let (cx, cy) = f.px(at);
            let _ = writeln!(out, r#"    <circle class="blocked" cx="{}" cy="{}" r="3"/>"#, num(cx), num(cy));
        }
        out.push_str("  </g>\n");
    }
    out.push_str("</svg>\n");
    out
}

pub fn write_svg(path: impl AsRef<Path>, domain: &PlanarDomain, report: &AnalysisReport) -> Result<()> {
    write_text(path, &render_svg(domain, report))
}
