//! Lifting a sketch-valid path into the original domain: find where path
//! segments cross original obstacles (plane sweep), then replace every
//! maximal excursion through an obstacle with the boundary geodesic between
//! its entry and exit points.

use crate::geom::{
    locate_with_tolerance,
    boundary_geodesic_on, segment_convex_intersection, segment_segment_params, segment_visible,
    ConvexPolygon, Point, PointLocation, PolygonalDomain, Segment, SimplePolygon, Tolerance,
};
use crate::path::{PolyPath, SegmentKind};
use crate::sketch::Sketch;
use crate::{Error, Result};

/// A tangent segment crossing a convex obstacle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Crossing {
    pub segment_id: usize,
    pub obstacle_id: usize,
    pub entry: Point,
    pub exit: Point,
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum EventKind {
    ObstacleStart,
    SegmentStart,
    ObstacleEnd,
    SegmentEnd,
}

/// All proper crossing intervals between tangents and convex obstacles, by
/// x-interval overlap sweep. Zero-length grazes are dropped.
pub fn sweep_tangent_intersections(
    tangents: &[Segment],
    domain: &PolygonalDomain,
) -> Result<Vec<Crossing>> {
    let hulls: Vec<ConvexPolygon> = domain
        .obstacles
        .iter()
        .map(|o| ConvexPolygon::new(o.vertices().to_vec()))
        .collect::<Result<_>>()?;

    let mut events: Vec<(f64, EventKind, usize)> = Vec::new();
    for i in 0..hulls.len() {
        let bb = domain.obstacles[i].bounding_box();
        events.push((bb.min.x, EventKind::ObstacleStart, i));
        events.push((bb.max.x, EventKind::ObstacleEnd, i));
    }
    for (i, s) in tangents.iter().enumerate() {
        events.push((s.a.x.min(s.b.x), EventKind::SegmentStart, i));
        events.push((s.a.x.max(s.b.x), EventKind::SegmentEnd, i));
    }
    events.sort_by(|a, b| {
        a.0.partial_cmp(&b.0)
            .unwrap()
            .then(a.1.cmp(&b.1))
            .then(a.2.cmp(&b.2))
    });

    let mut active_obs: Vec<usize> = Vec::new();
    let mut active_seg: Vec<usize> = Vec::new();
    let mut out = Vec::new();
    let test = |si: usize, oi: usize, out: &mut Vec<Crossing>| {
        if let Some((p, q)) = segment_convex_intersection(tangents[si], &hulls[oi]) {
            if p.dist(q) > 1e-12 {
                out.push(Crossing { segment_id: si, obstacle_id: oi, entry: p, exit: q });
            }
        }
    };
    for (_, kind, id) in events {
        match kind {
            EventKind::ObstacleStart => {
                for &si in &active_seg {
                    test(si, id, &mut out);
                }
                active_obs.push(id);
            }
            EventKind::SegmentStart => {
                for &oi in &active_obs {
                    test(id, oi, &mut out);
                }
                active_seg.push(id);
            }
            EventKind::ObstacleEnd => active_obs.retain(|&x| x != id),
            EventKind::SegmentEnd => active_seg.retain(|&x| x != id),
        }
    }
    out.sort_by(|a, b| (a.segment_id, a.obstacle_id).cmp(&(b.segment_id, b.obstacle_id)));
    Ok(out)
}

/// Brute-force all-pairs variant, used as the sweep's oracle in tests.
pub fn brute_tangent_intersections(
    tangents: &[Segment],
    domain: &PolygonalDomain,
) -> Result<Vec<Crossing>> {
    let hulls: Vec<ConvexPolygon> = domain
        .obstacles
        .iter()
        .map(|o| ConvexPolygon::new(o.vertices().to_vec()))
        .collect::<Result<_>>()?;
    let mut out = Vec::new();
    for (si, s) in tangents.iter().enumerate() {
        for (oi, h) in hulls.iter().enumerate() {
            if let Some((p, q)) = segment_convex_intersection(*s, h) {
                if p.dist(q) > 1e-12 {
                    out.push(Crossing { segment_id: si, obstacle_id: oi, entry: p, exit: q });
                }
            }
        }
    }
    Ok(out)
}

/// True iff every waypoint is in free space and every segment is visible.
pub fn validate_path(path: &PolyPath, domain: &PolygonalDomain) -> bool {
    path.waypoints.iter().all(|&p| domain.in_free_space(p))
        && path
            .segments()
            .all(|(s, _)| segment_visible(s, domain))
}

/// Replace every maximal excursion of the path through `poly`'s interior with
/// the boundary geodesic between the entry and exit points.
fn lift_against(
    pts: &mut Vec<Point>,
    kinds: &mut Vec<SegmentKind>,
    poly: &SimplePolygon,
) -> Result<()> {
    // Split each path segment at every boundary meeting point.
    let mut split_pts: Vec<Point> = Vec::new();
    let mut split_kinds: Vec<SegmentKind> = Vec::new();
    for i in 0..pts.len() - 1 {
        let seg = Segment::new(pts[i], pts[i + 1]);
        split_pts.push(pts[i]);
        let mut params: Vec<f64> = poly
            .edges()
            .flat_map(|e| segment_segment_params(seg, e))
            .filter(|&t| t > 1e-12 && t < 1.0 - 1e-12)
            .collect();
        params.sort_by(|a, b| a.partial_cmp(b).unwrap());
        params.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
        for t in params {
            split_pts.push(seg.at(t));
            split_kinds.push(kinds[i]);
        }
        split_kinds.push(kinds[i]);
    }
    split_pts.push(*pts.last().unwrap());

    // Mark interior pieces and replace maximal runs.
    let inside: Vec<bool> = (0..split_pts.len() - 1)
        .map(|i| {
            let mid = Segment::new(split_pts[i], split_pts[i + 1]).at(0.5);
            locate_with_tolerance(poly.vertices(), mid, Tolerance::default())
                == PointLocation::Inside
        })
        .collect();
    let mut out_pts: Vec<Point> = Vec::new();
    let mut out_kinds: Vec<SegmentKind> = Vec::new();
    let mut i = 0;
    while i < inside.len() {
        if !inside[i] {
            out_pts.push(split_pts[i]);
            out_kinds.push(split_kinds[i]);
            i += 1;
            continue;
        }
        let start = i;
        while i < inside.len() && inside[i] {
            i += 1;
        }
        let entry = split_pts[start];
        let exit = split_pts[i];
        if locate_with_tolerance(poly.vertices(), entry, Tolerance::default())
            != PointLocation::Boundary
            || locate_with_tolerance(poly.vertices(), exit, Tolerance::default())
                != PointLocation::Boundary
        {
            return Err(Error::InvalidInputPath);
        }
        let walk = boundary_geodesic_on(poly.vertices(), entry, exit, Tolerance::default())?;
        for w in &walk.waypoints[..walk.waypoints.len() - 1] {
            out_pts.push(*w);
            out_kinds.push(SegmentKind::BoundaryGeodesic);
        }
    }
    out_pts.push(*split_pts.last().unwrap());

    // Drop zero-length pieces left by grazing splits.
    let mut final_pts = vec![out_pts[0]];
    let mut final_kinds = Vec::new();
    for j in 1..out_pts.len() {
        if out_pts[j].dist(*final_pts.last().unwrap()) > 1e-12 {
            final_pts.push(out_pts[j]);
            final_kinds.push(out_kinds[j - 1]);
        }
    }
    *pts = final_pts;
    *kinds = final_kinds;
    Ok(())
}

/// Lift a path valid amid the sketch Ω into a path valid amid the original
/// obstacles, replacing obstacle excursions with boundary geodesics.
pub fn lift_path(
    path_in_sketch: &PolyPath,
    sketch: &Sketch,
    domain: &PolygonalDomain,
) -> Result<PolyPath> {
    let omega = sketch.as_domain(domain.bounding_rect);
    if !validate_path(path_in_sketch, &omega) {
        return Err(Error::InvalidInputPath);
    }
    if path_in_sketch.waypoints.len() < 2 {
        return Ok(path_in_sketch.clone());
    }
    let mut pts = path_in_sketch.waypoints.clone();
    let mut kinds = path_in_sketch.segment_kinds.clone();
    for poly in &domain.obstacles {
        if pts.len() < 2 {
            break;
        }
        lift_against(&mut pts, &mut kinds, poly)?;
    }
    Ok(PolyPath::new(pts, kinds))
}
