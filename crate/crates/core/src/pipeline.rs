//! End-to-end approximate shortest-path pipelines.
//!
//! Convex mode: sketch → cone spanner → Dijkstra → lift. Simple-polygon mode
//! lives in [`crate::corridors`]; [`approx_shortest_path`] dispatches.

use crate::geom::{Point, PolygonalDomain};
use crate::lift::lift_path;
use crate::path::{PolyPath, SegmentKind};
use crate::sketch::{build_sketch, make_params, EpsilonParams, ParamMode, Sketch};
use crate::spanner::{EdgeKind, Spanner, SpannerBuilder};
use crate::{Error, Result};

/// Obstacle-kind dispatch for [`approx_shortest_path`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PipelineMode {
    Auto,
    Convex,
    Simple,
}

/// Everything a single convex-pipeline run produces, for inspection and
/// rendering.
pub struct PipelineRun {
    pub params: EpsilonParams,
    pub sketch: Sketch,
    pub spanner: Spanner,
    /// Path amid the sketch Ω, before lifting.
    pub sketch_path: PolyPath,
    /// Final path, valid amid the original obstacles.
    pub path: PolyPath,
}

/// Convert a spanner node path into a polyline with per-segment kinds.
pub(crate) fn node_path_to_polypath(g: &Spanner, node_path: &[usize]) -> PolyPath {
    let pts: Vec<Point> = node_path.iter().map(|&i| g.nodes[i].point).collect();
    let mut kinds = Vec::with_capacity(pts.len().saturating_sub(1));
    for w in node_path.windows(2) {
        let kind = g
            .edges
            .iter()
            .filter(|e| (e.u, e.v) == (w[0], w[1]) || (e.u, e.v) == (w[1], w[0]))
            .min_by(|a, b| a.weight.partial_cmp(&b.weight).unwrap())
            .map(|e| e.kind)
            .unwrap_or(EdgeKind::Cone);
        kinds.push(match kind {
            EdgeKind::Cone => SegmentKind::Tangent,
            EdgeKind::BoundaryArc => SegmentKind::BoundaryGeodesic,
            EdgeKind::CorridorPath => SegmentKind::CorridorPath,
        });
    }
    PolyPath::new(pts, kinds)
}

/// Run the convex single-shot pipeline, returning all artifacts.
pub fn run_convex(
    domain: &PolygonalDomain,
    s: Point,
    t: Point,
    eps: f64,
) -> Result<PipelineRun> {
    for (i, o) in domain.obstacles.iter().enumerate() {
        if !o.is_convex() {
            return Err(Error::NonConvexObstacle(i));
        }
    }
    if !domain.in_free_space(s) || !domain.in_free_space(t) {
        return Err(Error::PointInsideObstacle);
    }
    let params = make_params(eps, ParamMode::SingleShot)?;
    let sketch = build_sketch(domain, &params)?;
    let omega = sketch.as_domain(domain.bounding_rect);
    let mut builder = SpannerBuilder::new(&omega, &params)?;
    let s_id = builder.insert_query_point(s)?;
    let t_id = builder.insert_query_point(t)?;
    builder.connect_if_visible(s_id, t_id);
    let spanner = builder.finish();
    let (dist, node_path) = spanner.dijkstra(s_id, t_id)?;
    if !dist.is_finite() {
        return Err(Error::Unreachable);
    }
    let sketch_path = if s_id == t_id {
        PolyPath::single(s)
    } else {
        node_path_to_polypath(&spanner, &node_path)
    };
    let path = lift_path(&sketch_path, &sketch, domain)?;
    Ok(PipelineRun { params, sketch, spanner, sketch_path, path })
}

/// (1+ε)-approximate shortest path amid convex obstacles.
pub fn approx_shortest_path_convex(
    domain: &PolygonalDomain,
    s: Point,
    t: Point,
    eps: f64,
) -> Result<PolyPath> {
    run_convex(domain, s, t, eps).map(|r| r.path)
}

/// Dispatch on obstacle shape: convex pipeline when possible, corridor
/// pipeline otherwise.
pub fn approx_shortest_path(
    domain: &PolygonalDomain,
    s: Point,
    t: Point,
    eps: f64,
    mode: PipelineMode,
) -> Result<PolyPath> {
    match mode {
        PipelineMode::Convex => approx_shortest_path_convex(domain, s, t, eps),
        PipelineMode::Simple => crate::corridors::approx_shortest_path_simple(domain, s, t, eps),
        PipelineMode::Auto => {
            if domain.all_convex() {
                approx_shortest_path_convex(domain, s, t, eps)
            } else {
                crate::corridors::approx_shortest_path_simple(domain, s, t, eps)
            }
        }
    }
}
