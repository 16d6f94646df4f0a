//! Polyline paths with per-segment provenance.

use serde::{Deserialize, Serialize};

use crate::geom::Point;

/// How a path segment arose.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SegmentKind {
    /// A straight free-space segment (tangent or cone edge).
    Tangent,
    /// A walk along an obstacle (or corepolygon) boundary.
    BoundaryGeodesic,
    /// A geodesic through a corridor between pseudo-apices.
    CorridorPath,
}

/// A polyline in free space with total length and per-segment provenance.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PolyPath {
    pub waypoints: Vec<Point>,
    /// One kind per segment (`waypoints.len() - 1` entries, or empty for a
    /// degenerate single-point path).
    pub segment_kinds: Vec<SegmentKind>,
    pub length: f64,
}

impl PolyPath {
    pub fn new(waypoints: Vec<Point>, segment_kinds: Vec<SegmentKind>) -> Self {
        debug_assert!(waypoints.len() <= 1 || segment_kinds.len() == waypoints.len() - 1);
        let length = waypoints.windows(2).map(|w| w[0].dist(w[1])).sum();
        PolyPath { waypoints, segment_kinds, length }
    }

    /// A path whose segments all share one kind.
    pub fn new_uniform(waypoints: Vec<Point>, kind: SegmentKind) -> Self {
        let kinds = vec![kind; waypoints.len().saturating_sub(1)];
        PolyPath::new(waypoints, kinds)
    }

    pub fn single(p: Point) -> Self {
        PolyPath { waypoints: vec![p], segment_kinds: vec![], length: 0.0 }
    }

    pub fn segments(&self) -> impl Iterator<Item = (crate::geom::Segment, SegmentKind)> + '_ {
        self.waypoints
            .windows(2)
            .zip(self.segment_kinds.iter())
            .map(|(w, &k)| (crate::geom::Segment::new(w[0], w[1]), k))
    }

    /// Recompute the cached length from the waypoints.
    pub fn recompute_length(&mut self) {
        self.length = self.waypoints.windows(2).map(|w| w[0].dist(w[1])).sum();
    }
}
