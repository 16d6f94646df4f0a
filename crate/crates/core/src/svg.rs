//! Standalone SVG figures: obstacles filled, corepolygons outlined, paths
//! stroked with per-kind colors, plus a small legend.

use std::fmt::Write as _;
use std::path::Path;

use crate::geom::{Point, PolygonalDomain};
use crate::path::{PolyPath, SegmentKind};
use crate::sketch::Sketch;
use crate::spanner::Spanner;
use crate::Result;

/// Optional figure layers drawn on top of the domain.
#[derive(Default)]
pub struct SvgOverlays<'a> {
    pub sketch: Option<&'a Sketch>,
    pub spanner: Option<&'a Spanner>,
    /// Labeled paths; lengths are reported in the legend.
    pub paths: Vec<(&'a PolyPath, &'a str)>,
}

const PATH_COLORS: [&str; 6] =
    ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

fn kind_dash(kind: SegmentKind) -> &'static str {
    match kind {
        SegmentKind::Tangent => "none",
        SegmentKind::BoundaryGeodesic => "4 2",
        SegmentKind::CorridorPath => "1 2",
    }
}

/// Render the domain and overlays as a standalone SVG document.
pub fn render_svg(domain: &PolygonalDomain, overlays: &SvgOverlays) -> String {
    let r = &domain.bounding_rect;
    let (w, h) = (r.max.x - r.min.x, r.max.y - r.min.y);
    let margin = 0.03 * w.max(h);
    // Flip y so the figure matches mathematical orientation.
    let tx = |p: Point| (p.x, r.max.y - p.y + r.min.y);
    let pts = |vs: &[Point]| {
        vs.iter()
            .map(|&p| {
                let (x, y) = tx(p);
                format!("{x:.4},{y:.4}")
            })
            .collect::<Vec<_>>()
            .join(" ")
    };

    let mut s = String::new();
    let _ = write!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{} {} {} {}" font-family="sans-serif" font-size="{:.3}">"#,
        r.min.x - margin,
        r.min.y - margin,
        w + 2.0 * margin,
        h + 2.0 * margin,
        0.025 * w.max(h),
    );
    s.push('\n');
    let _ = writeln!(
        s,
        r##"<rect x="{}" y="{}" width="{w}" height="{h}" fill="white" stroke="#333" stroke-width="{:.4}"/>"##,
        r.min.x,
        r.min.y,
        0.004 * w.max(h),
    );
    for obs in &domain.obstacles {
        let _ = writeln!(
            s,
            r##"<polygon class="obstacle" points="{}" fill="#c8c8c8" stroke="#555" stroke-width="{:.4}"/>"##,
            pts(obs.vertices()),
            0.003 * w.max(h),
        );
    }
    if let Some(sk) = overlays.sketch {
        for cp in &sk.corepolygons {
            let _ = writeln!(
                s,
                r##"<polygon class="corepolygon" points="{}" fill="none" stroke="#8c2d04" stroke-width="{:.4}" stroke-dasharray="2 1"/>"##,
                pts(cp.polygon.vertices()),
                0.004 * w.max(h),
            );
        }
    }
    if let Some(g) = overlays.spanner {
        for e in &g.edges {
            let (a, b) = (tx(g.nodes[e.u].point), tx(g.nodes[e.v].point));
            let _ = writeln!(
                s,
                r##"<line class="spanner-edge" x1="{:.4}" y1="{:.4}" x2="{:.4}" y2="{:.4}" stroke="#7fb0d0" stroke-width="{:.4}" opacity="0.6"/>"##,
                a.0,
                a.1,
                b.0,
                b.1,
                0.002 * w.max(h),
            );
        }
    }
    for (i, (p, _)) in overlays.paths.iter().enumerate() {
        let color = PATH_COLORS[i % PATH_COLORS.len()];
        for (k, seg) in p.waypoints.windows(2).enumerate() {
            let kind = p.segment_kinds.get(k).copied().unwrap_or(SegmentKind::Tangent);
            let (a, b) = (tx(seg[0]), tx(seg[1]));
            let _ = writeln!(
                s,
                r##"<line class="path" x1="{:.4}" y1="{:.4}" x2="{:.4}" y2="{:.4}" stroke="{color}" stroke-width="{:.4}" stroke-dasharray="{}"/>"##,
                a.0,
                a.1,
                b.0,
                b.1,
                0.006 * w.max(h),
                kind_dash(kind),
            );
        }
    }
    // Legend: one row per path with its reported length.
    let fs = 0.025 * w.max(h);
    for (i, (p, label)) in overlays.paths.iter().enumerate() {
        let color = PATH_COLORS[i % PATH_COLORS.len()];
        let y = r.min.y - margin + fs * (i as f64 + 1.2);
        let _ = writeln!(
            s,
            r#"<text class="legend" x="{:.4}" y="{y:.4}" fill="{color}">{label}: length {:.6}</text>"#,
            r.min.x,
            p.length,
        );
    }
    s.push_str("</svg>\n");
    s
}

/// Write the rendered figure to `out`.
pub fn emit_svg(
    domain: &PolygonalDomain,
    overlays: &SvgOverlays,
    out: &Path,
) -> Result<()> {
    std::fs::write(out, render_svg(domain, overlays))?;
    Ok(())
}
