//! Exact-predicate-backed planar primitives: points, polygons, hulls,
//! tangents, visibility, and segment/convex-polygon intersection.
//!
//! All orientation decisions go through [`orient2d`], which is exact
//! (Shewchuk adaptive predicates via the `robust` crate). Higher-level code
//! branches on signs, never on raw floating-point comparisons.

use serde::{Deserialize, Serialize};

use crate::path::{PolyPath, SegmentKind};
use crate::{Error, Result};

/// A point in the plane. Coordinates must be finite.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn new(x: f64, y: f64) -> Self {
        debug_assert!(x.is_finite() && y.is_finite());
        Point { x, y }
    }

    pub fn dist(&self, other: Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    pub fn dist_sq(&self, other: Point) -> f64 {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        dx * dx + dy * dy
    }

    /// Counterclockwise angle of the vector `self -> to` from the +x axis,
    /// normalized to `[0, 2*pi)`.
    pub fn angle_to(&self, to: Point) -> f64 {
        normalize_angle((to.y - self.y).atan2(to.x - self.x))
    }
}

/// Normalize an angle into `[0, 2*pi)`.
pub fn normalize_angle(a: f64) -> f64 {
    let two_pi = std::f64::consts::TAU;
    let mut a = a % two_pi;
    if a < 0.0 {
        a += two_pi;
    }
    if a >= two_pi {
        a = 0.0;
    }
    a
}

/// A line segment between two points.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Segment {
    pub a: Point,
    pub b: Point,
}

impl Segment {
    pub fn new(a: Point, b: Point) -> Self {
        Segment { a, b }
    }

    pub fn len(&self) -> f64 {
        self.a.dist(self.b)
    }

    /// Point at parameter `t` along the segment (`t = 0` is `a`).
    pub fn at(&self, t: f64) -> Point {
        Point::new(
            self.a.x + t * (self.b.x - self.a.x),
            self.a.y + t * (self.b.y - self.a.y),
        )
    }
}

/// Absolute and relative length tolerances used for on-boundary snapping.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct Tolerance {
    pub eps_abs: f64,
    pub eps_rel: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance { eps_abs: 1e-9, eps_rel: 1e-12 }
    }
}

/// Sign of the signed area of triangle `abc`: `+1` for counterclockwise,
/// `0` for collinear, `-1` for clockwise. Exact.
pub fn orient2d(a: Point, b: Point, c: Point) -> i8 {
    let v = robust::orient2d(
        robust::Coord { x: a.x, y: a.y },
        robust::Coord { x: b.x, y: b.y },
        robust::Coord { x: c.x, y: c.y },
    );
    if v > 0.0 {
        1
    } else if v < 0.0 {
        -1
    } else {
        0
    }
}

/// True iff `p` lies on the closed segment `ab` (exact).
pub fn on_segment(a: Point, b: Point, p: Point) -> bool {
    if orient2d(a, b, p) != 0 {
        return false;
    }
    p.x >= a.x.min(b.x) && p.x <= a.x.max(b.x) && p.y >= a.y.min(b.y) && p.y <= a.y.max(b.y)
}

/// Where a point sits relative to a polygon.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PointLocation {
    Inside,
    Boundary,
    Outside,
}

/// Locate `p` relative to the simple polygon given by `vertices` (any
/// orientation). Crossing-number walk with exact orientation tests.
pub fn locate_point(vertices: &[Point], p: Point) -> PointLocation {
    let n = vertices.len();
    let mut inside = false;
    for i in 0..n {
        let a = vertices[i];
        let b = vertices[(i + 1) % n];
        if on_segment(a, b, p) {
            return PointLocation::Boundary;
        }
        // Standard ray-crossing parity, decided by exact orientation.
        if (a.y > p.y) != (b.y > p.y) {
            let o = orient2d(a, b, p);
            let upward = b.y > a.y;
            if (upward && o > 0) || (!upward && o < 0) {
                inside = !inside;
            }
        }
    }
    if inside {
        PointLocation::Inside
    } else {
        PointLocation::Outside
    }
}

/// Intersection of two segments as parameters along the first segment.
///
/// Returns the (possibly empty, possibly degenerate) sorted list of
/// parameters `t` in `[0,1]` at which segment `s` meets segment `e`:
/// one value for a transversal crossing or endpoint touch, two for a
/// collinear overlap.
pub fn segment_segment_params(s: Segment, e: Segment) -> Vec<f64> {
    let o1 = orient2d(s.a, s.b, e.a);
    let o2 = orient2d(s.a, s.b, e.b);
    let o3 = orient2d(e.a, e.b, s.a);
    let o4 = orient2d(e.a, e.b, s.b);

    let param_of = |p: Point| -> f64 {
        let dx = s.b.x - s.a.x;
        let dy = s.b.y - s.a.y;
        if dx.abs() >= dy.abs() {
            if dx == 0.0 {
                0.0
            } else {
                (p.x - s.a.x) / dx
            }
        } else {
            (p.y - s.a.y) / dy
        }
    };

    if o1 == 0 && o2 == 0 {
        // Collinear: overlap interval along s.
        if o3 != 0 || o4 != 0 {
            return vec![]; // parallel but offset (can happen only for degenerate e)
        }
        let mut t0 = param_of(e.a);
        let mut t1 = param_of(e.b);
        if t0 > t1 {
            std::mem::swap(&mut t0, &mut t1);
        }
        let lo = t0.max(0.0);
        let hi = t1.min(1.0);
        if lo > hi {
            return vec![];
        }
        if lo == hi {
            return vec![lo];
        }
        return vec![lo, hi];
    }

    // Proper or touching intersection requires opposite (or zero) signs on
    // both supporting lines.
    if (o1 > 0 && o2 > 0) || (o1 < 0 && o2 < 0) || (o3 > 0 && o4 > 0) || (o3 < 0 && o4 < 0) {
        return vec![];
    }

    // Touch at an endpoint of e.
    if o1 == 0 {
        if on_segment(s.a, s.b, e.a) {
            return vec![param_of(e.a)];
        }
        return vec![];
    }
    if o2 == 0 {
        if on_segment(s.a, s.b, e.b) {
            return vec![param_of(e.b)];
        }
        return vec![];
    }
    if o3 == 0 {
        return vec![0.0];
    }
    if o4 == 0 {
        return vec![1.0];
    }

    // Proper crossing: compute the parameter with plain float math. The
    // decision that a crossing exists was exact; only the coordinate of the
    // crossing point is approximate.
    let d1x = s.b.x - s.a.x;
    let d1y = s.b.y - s.a.y;
    let d2x = e.b.x - e.a.x;
    let d2y = e.b.y - e.a.y;
    let denom = d1x * d2y - d1y * d2x;
    let t = ((e.a.x - s.a.x) * d2y - (e.a.y - s.a.y) * d2x) / denom;
    if t.is_finite() {
        return vec![t.clamp(0.0, 1.0)];
    }
    // The float cross products cancelled even though the exact predicates
    // saw a crossing; bisect on the exact side-of-line predicate instead.
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    let side = |t: f64| orient2d(e.a, e.b, s.at(t));
    let s_lo = side(lo);
    for _ in 0..64 {
        let mid = (lo + hi) / 2.0;
        if side(mid) == s_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    vec![(lo + hi) / 2.0]
}

/// True iff segments properly cross (intersect at a single interior point of
/// both).
pub fn segments_properly_cross(s: Segment, e: Segment) -> bool {
    let o1 = orient2d(s.a, s.b, e.a);
    let o2 = orient2d(s.a, s.b, e.b);
    let o3 = orient2d(e.a, e.b, s.a);
    let o4 = orient2d(e.a, e.b, s.b);
    ((o1 > 0 && o2 < 0) || (o1 < 0 && o2 > 0)) && ((o3 > 0 && o4 < 0) || (o3 < 0 && o4 > 0))
}

/// An axis-aligned rectangle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Rect {
    pub min: Point,
    pub max: Point,
}

impl Rect {
    pub fn new(min: Point, max: Point) -> Self {
        Rect { min, max }
    }

    pub fn contains(&self, p: Point) -> bool {
        p.x >= self.min.x && p.x <= self.max.x && p.y >= self.min.y && p.y <= self.max.y
    }

    pub fn contains_strict(&self, p: Point) -> bool {
        p.x > self.min.x && p.x < self.max.x && p.y > self.min.y && p.y < self.max.y
    }

    /// Corner points in counterclockwise order starting at `min`.
    pub fn corners(&self) -> [Point; 4] {
        [
            self.min,
            Point::new(self.max.x, self.min.y),
            self.max,
            Point::new(self.min.x, self.max.y),
        ]
    }
}

fn bbox(vertices: &[Point]) -> Rect {
    let mut min = Point { x: f64::INFINITY, y: f64::INFINITY };
    let mut max = Point { x: f64::NEG_INFINITY, y: f64::NEG_INFINITY };
    for v in vertices {
        min.x = min.x.min(v.x);
        min.y = min.y.min(v.y);
        max.x = max.x.max(v.x);
        max.y = max.y.max(v.y);
    }
    Rect::new(min, max)
}

/// A simple polygon with counterclockwise vertex order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimplePolygon {
    vertices: Vec<Point>,
    #[serde(skip)]
    cached_bbox: Option<Rect>,
}

impl SimplePolygon {
    /// Build a simple polygon. Clockwise input is reversed to CCW.
    pub fn new(mut vertices: Vec<Point>) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(Error::DegenerateInput("polygon needs >= 3 vertices".into()));
        }
        if signed_area2(&vertices) < 0.0 {
            vertices.reverse();
        }
        let poly = SimplePolygon { cached_bbox: Some(bbox(&vertices)), vertices };
        if !poly.is_simple() {
            return Err(Error::DegenerateInput("polygon is self-intersecting".into()));
        }
        Ok(poly)
    }

    /// Construct without the simplicity check (for callers that already
    /// validated, e.g. instance generation output re-read from disk).
    pub fn new_unchecked(mut vertices: Vec<Point>) -> Self {
        if signed_area2(&vertices) < 0.0 {
            vertices.reverse();
        }
        SimplePolygon { cached_bbox: Some(bbox(&vertices)), vertices }
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn edge(&self, i: usize) -> Segment {
        Segment::new(self.vertices[i], self.vertices[(i + 1) % self.vertices.len()])
    }

    pub fn edges(&self) -> impl Iterator<Item = Segment> + '_ {
        (0..self.vertices.len()).map(move |i| self.edge(i))
    }

    pub fn bounding_box(&self) -> Rect {
        self.cached_bbox.unwrap_or_else(|| bbox(&self.vertices))
    }

    pub fn perimeter(&self) -> f64 {
        self.edges().map(|e| e.len()).sum()
    }

    pub fn area(&self) -> f64 {
        signed_area2(&self.vertices) / 2.0
    }

    pub fn locate(&self, p: Point) -> PointLocation {
        if !self.bounding_box().contains(p) {
            return PointLocation::Outside;
        }
        locate_point(&self.vertices, p)
    }

    pub fn is_simple(&self) -> bool {
        let n = self.vertices.len();
        for i in 0..n {
            let ei = self.edge(i);
            if ei.a == ei.b {
                return false;
            }
            for j in (i + 1)..n {
                let ej = self.edge(j);
                let adjacent = j == i + 1 || (i == 0 && j == n - 1);
                if adjacent {
                    // Edges share one endpoint; reject a collinear spike
                    // folding back along the other edge.
                    let (shared, x, y) = if j == i + 1 {
                        (ei.b, ei.a, ej.b)
                    } else {
                        (ei.a, ei.b, ej.a)
                    };
                    let dot = (x.x - shared.x) * (y.x - shared.x)
                        + (x.y - shared.y) * (y.y - shared.y);
                    if orient2d(shared, x, y) == 0 && dot > 0.0 {
                        return false;
                    }
                    continue;
                }
                if !segment_segment_params(ei, ej).is_empty() {
                    return false;
                }
            }
        }
        true
    }

    /// True iff every turn is counterclockwise or straight.
    pub fn is_convex(&self) -> bool {
        let n = self.vertices.len();
        (0..n).all(|i| {
            orient2d(self.vertices[i], self.vertices[(i + 1) % n], self.vertices[(i + 2) % n]) >= 0
        })
    }
}

/// Twice the signed area (positive for CCW).
pub fn signed_area2(vertices: &[Point]) -> f64 {
    let n = vertices.len();
    let mut s = 0.0;
    for i in 0..n {
        let a = vertices[i];
        let b = vertices[(i + 1) % n];
        s += a.x * b.y - b.x * a.y;
    }
    s
}

/// A strictly convex polygon with counterclockwise vertex order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvexPolygon {
    vertices: Vec<Point>,
}

impl ConvexPolygon {
    /// Build a strictly convex CCW polygon. Consecutive collinear vertices
    /// are removed during normalization; CW input is reversed.
    pub fn new(mut vertices: Vec<Point>) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(Error::DegenerateInput("polygon needs >= 3 vertices".into()));
        }
        if signed_area2(&vertices) < 0.0 {
            vertices.reverse();
        }
        // Drop collinear middles.
        let normalized = drop_collinear(vertices);
        if normalized.len() < 3 {
            return Err(Error::DegenerateInput("all vertices collinear".into()));
        }
        let n = normalized.len();
        for i in 0..n {
            if orient2d(normalized[i], normalized[(i + 1) % n], normalized[(i + 2) % n]) <= 0 {
                return Err(Error::DegenerateInput("polygon is not strictly convex".into()));
            }
        }
        Ok(ConvexPolygon { vertices: normalized })
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn edge(&self, i: usize) -> Segment {
        Segment::new(self.vertices[i], self.vertices[(i + 1) % self.vertices.len()])
    }

    pub fn edges(&self) -> impl Iterator<Item = Segment> + '_ {
        (0..self.vertices.len()).map(move |i| self.edge(i))
    }

    pub fn perimeter(&self) -> f64 {
        self.edges().map(|e| e.len()).sum()
    }

    pub fn locate(&self, p: Point) -> PointLocation {
        locate_point(&self.vertices, p)
    }

    pub fn to_simple(&self) -> SimplePolygon {
        SimplePolygon::new_unchecked(self.vertices.clone())
    }
}

fn drop_collinear(vertices: Vec<Point>) -> Vec<Point> {
    let n = vertices.len();
    let mut keep = Vec::with_capacity(n);
    for i in 0..n {
        let prev = vertices[(i + n - 1) % n];
        let cur = vertices[i];
        let next = vertices[(i + 1) % n];
        if orient2d(prev, cur, next) != 0 {
            keep.push(cur);
        }
    }
    keep
}

/// Counterclockwise convex hull (Andrew's monotone chain, exact turns).
/// Collinear points interior to hull edges are excluded.
pub fn convex_hull(points: &[Point]) -> Result<ConvexPolygon> {
    let mut pts: Vec<Point> = points.to_vec();
    pts.sort_by(|a, b| a.x.partial_cmp(&b.x).unwrap().then(a.y.partial_cmp(&b.y).unwrap()));
    pts.dedup();
    if pts.len() < 3 {
        return Err(Error::DegenerateInput("hull needs >= 3 distinct points".into()));
    }
    let mut lower: Vec<Point> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && orient2d(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<Point> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && orient2d(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    if lower.len() < 3 {
        return Err(Error::DegenerateInput("all points collinear".into()));
    }
    ConvexPolygon::new(lower)
}

/// The two tangent vertices from an exterior point `p`: `(left, right)`.
///
/// The right tangent vertex `r` has all of `poly` on the left of the line
/// `p -> r`; the left tangent vertex symmetrically. Collinear ties resolve to
/// the vertex farthest from `p` along the tangent direction.
pub fn tangents_from_point(p: Point, poly: &ConvexPolygon) -> Result<(Point, Point)> {
    if poly.locate(p) != PointLocation::Outside {
        return Err(Error::PointInsidePolygon);
    }
    // Hull of the polygon plus p: the tangent vertices are p's hull
    // neighbors. Hull normalization drops collinear interior points, which
    // realizes the farthest-support tie rule.
    let mut pts = poly.vertices().to_vec();
    pts.push(p);
    let hull = convex_hull(&pts)?;
    let hv = hull.vertices();
    let idx = hv
        .iter()
        .position(|&q| q == p)
        .ok_or(Error::PointInsidePolygon)?;
    let n = hv.len();
    let right = hv[(idx + 1) % n];
    let left = hv[(idx + n - 1) % n];
    Ok((left, right))
}

/// Index of a vertex maximizing `dot(dir, v)`. Binary search on the two
/// monotone chains for large polygons, linear scan below a cutoff.
pub fn extreme_vertex(poly: &ConvexPolygon, dir: (f64, f64)) -> usize {
    let vs = poly.vertices();
    let n = vs.len();
    let dot = |i: usize| dir.0 * vs[i].x + dir.1 * vs[i].y;
    if n <= 32 {
        let mut best = 0;
        for i in 1..n {
            if dot(i) > dot(best) {
                best = i;
            }
        }
        return best;
    }
    // Local-maximum binary search on the cyclic unimodal sequence.
    let is_local_max = |i: usize| dot(i) >= dot((i + 1) % n) && dot(i) >= dot((i + n - 1) % n);
    let mut lo = 0usize;
    let mut hi = n; // search window [lo, lo+n)
    let d0 = dot(0);
    let up0 = dot(1) > d0;
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        let m = mid % n;
        if is_local_max(m) {
            return m;
        }
        let dm = dot(m);
        let up_m = dot((m + 1) % n) > dm;
        // Decide which half contains the maximum.
        let go_right = if up_m {
            // still ascending at mid
            !(up0 && dm < d0)
        } else {
            up0 && dm < d0
        };
        if go_right {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let cand = lo % n;
    // The window collapsed; repair locally.
    let mut best = cand;
    for step in [n - 2, n - 1, 1, 2] {
        let i = (cand + step) % n;
        if dot(i) > dot(best) {
            best = i;
        }
    }
    best
}

/// First and last points of `s` intersected with a convex polygon, ordered
/// along `s`; `None` if the intersection is empty. Logarithmic in the polygon
/// size (linear below a small cutoff).
pub fn segment_convex_intersection(s: Segment, poly: &ConvexPolygon) -> Option<(Point, Point)> {
    let vs = poly.vertices();
    let n = vs.len();
    if s.a == s.b {
        return match poly.locate(s.a) {
            PointLocation::Outside => None,
            _ => Some((s.a, s.a)),
        };
    }
    // Normal direction of the supporting line (pointing to the left of a->b).
    let d = (s.b.x - s.a.x, s.b.y - s.a.y);
    let nrm = (-d.1, d.0);
    let imax = extreme_vertex(poly, nrm);
    let imin = extreme_vertex(poly, (-nrm.0, -nrm.1));
    let side = |i: usize| orient2d(s.a, s.b, vs[i]);
    let smax = side(imax);
    let smin = side(imin);
    if smax < 0 || smin > 0 {
        return None; // line misses the polygon entirely
    }

    let param_of = |p: Point| -> f64 {
        if d.0.abs() >= d.1.abs() {
            (p.x - s.a.x) / d.0
        } else {
            (p.y - s.a.y) / d.1
        }
    };

    // Crossing parameter(s) of the supporting line with the boundary chain
    // from vertex range [from..to] (cyclic), on which `side` is monotone
    // non-increasing from `side(from) >= 0` to `side(to) <= 0`.
    let chain_crossing = |from: usize, to: usize| -> f64 {
        // Binary search for the last index with side >= 0.
        let len = (to + n - from) % n;
        let (mut lo, mut hi) = (0usize, len);
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            if side((from + mid) % n) >= 0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let k = (from + lo) % n;
        let k1 = (k + 1) % n;
        if side(k) == 0 {
            return param_of(vs[k]);
        }
        // Proper sign change on edge (k, k+1): intersect the two lines.
        let e = Segment::new(vs[k], vs[k1]);
        let d2x = e.b.x - e.a.x;
        let d2y = e.b.y - e.a.y;
        let denom = d.0 * d2y - d.1 * d2x;
        let t = ((e.a.x - s.a.x) * d2y - (e.a.y - s.a.y) * d2x) / denom;
        t
    };

    let (mut t0, mut t1);
    if smax == 0 {
        // Tangency at the extreme vertex (or along an edge through it).
        let mut ts = vec![param_of(vs[imax])];
        for adj in [(imax + 1) % n, (imax + n - 1) % n] {
            if side(adj) == 0 {
                ts.push(param_of(vs[adj]));
            }
        }
        t0 = ts.iter().cloned().fold(f64::INFINITY, f64::min);
        t1 = ts.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    } else if smin == 0 {
        let mut ts = vec![param_of(vs[imin])];
        for adj in [(imin + 1) % n, (imin + n - 1) % n] {
            if side(adj) == 0 {
                ts.push(param_of(vs[adj]));
            }
        }
        t0 = ts.iter().cloned().fold(f64::INFINITY, f64::min);
        t1 = ts.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    } else {
        // Proper chord: one crossing on each monotone chain.
        let ta = chain_crossing(imax, imin);
        let tb = chain_crossing_neg(s, poly, imin, imax, param_of);
        t0 = ta.min(tb);
        t1 = ta.max(tb);
    }

    // Clip the chord parameter interval to the segment.
    if t1 < 0.0 || t0 > 1.0 {
        // The chord misses the segment range; but an endpoint inside the
        // polygon cannot happen in that case.
        return None;
    }
    t0 = t0.max(0.0);
    t1 = t1.min(1.0);
    let entry = if t0 == 0.0 { s.a } else { s.at(t0) };
    let exit = if t1 == 1.0 { s.b } else { s.at(t1) };
    Some((entry, exit))
}

// Crossing on the chain where `side` goes from <= 0 up to >= 0 (i.e. the
// other monotone chain, searched with the inverted predicate).
fn chain_crossing_neg(
    s: Segment,
    poly: &ConvexPolygon,
    from: usize,
    to: usize,
    param_of: impl Fn(Point) -> f64,
) -> f64 {
    let vs = poly.vertices();
    let n = vs.len();
    let side = |i: usize| orient2d(s.a, s.b, vs[i]);
    let len = (to + n - from) % n;
    let (mut lo, mut hi) = (0usize, len);
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        if side((from + mid) % n) <= 0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let k = (from + lo) % n;
    let k1 = (k + 1) % n;
    if side(k) == 0 {
        return param_of(vs[k]);
    }
    let e = Segment::new(vs[k], vs[k1]);
    let d = (s.b.x - s.a.x, s.b.y - s.a.y);
    let d2x = e.b.x - e.a.x;
    let d2y = e.b.y - e.a.y;
    let denom = d.0 * d2y - d.1 * d2x;
    ((e.a.x - s.a.x) * d2y - (e.a.y - s.a.y) * d2x) / denom
}

/// Position of a point on a polygon boundary: edge index plus arc length from
/// the edge start.
#[derive(Debug, Clone, Copy)]
pub struct BoundaryPos {
    pub edge: usize,
    pub offset: f64,
    /// Cumulative arc length from vertex 0.
    pub arc: f64,
}

/// Locate `p` on the boundary of the polygon (vertex list, CCW) within
/// tolerance. Returns `None` if `p` is farther than `tol.eps_abs` from every
/// edge.
pub fn locate_on_boundary(vertices: &[Point], p: Point, tol: Tolerance) -> Option<BoundaryPos> {
    let n = vertices.len();
    let mut arc = 0.0;
    let mut best: Option<(f64, BoundaryPos)> = None;
    for i in 0..n {
        let a = vertices[i];
        let b = vertices[(i + 1) % n];
        let e = Segment::new(a, b);
        let len = e.len();
        // Projection clamp.
        let t = if len == 0.0 {
            0.0
        } else {
            (((p.x - a.x) * (b.x - a.x) + (p.y - a.y) * (b.y - a.y)) / (len * len)).clamp(0.0, 1.0)
        };
        let q = e.at(t);
        let d = p.dist(q);
        if d <= tol.eps_abs {
            let pos = BoundaryPos { edge: i, offset: t * len, arc: arc + t * len };
            match best {
                Some((bd, _)) if bd <= d => {}
                _ => best = Some((d, pos)),
            }
        }
        arc += len;
    }
    best.map(|(_, pos)| pos)
}

/// Shorter boundary walk between two boundary points of a convex polygon, as
/// a polyline through intermediate vertices. Ties pick the CCW walk.
pub fn boundary_geodesic(poly: &ConvexPolygon, p: Point, q: Point) -> Result<PolyPath> {
    boundary_geodesic_on(poly.vertices(), p, q, Tolerance::default())
}

/// Same as [`boundary_geodesic`] for an arbitrary CCW vertex cycle.
pub fn boundary_geodesic_on(
    vertices: &[Point],
    p: Point,
    q: Point,
    tol: Tolerance,
) -> Result<PolyPath> {
    let pp = locate_on_boundary(vertices, p, tol).ok_or(Error::PointNotOnBoundary)?;
    let qp = locate_on_boundary(vertices, q, tol).ok_or(Error::PointNotOnBoundary)?;
    let n = vertices.len();
    let perimeter: f64 = (0..n)
        .map(|i| vertices[i].dist(vertices[(i + 1) % n]))
        .sum();

    // CCW walk p -> q.
    let walk = |from: &BoundaryPos, to: &BoundaryPos, a: Point, b: Point| -> Vec<Point> {
        let mut pts = vec![a];
        let mut i = from.edge;
        if from.edge == to.edge && from.offset <= to.offset {
            pts.push(b);
            return pts;
        }
        loop {
            i = (i + 1) % n;
            pts.push(vertices[i]);
            if i == to.edge {
                break;
            }
        }
        pts.push(b);
        pts
    };

    let ccw_pts = walk(&pp, &qp, p, q);
    let ccw_len = polyline_len(&ccw_pts);
    let cw_pts: Vec<Point> = {
        let mut v = walk(&qp, &pp, q, p);
        v.reverse();
        v
    };
    let cw_len = polyline_len(&cw_pts);
    debug_assert!((ccw_len + cw_len - perimeter).abs() <= tol.eps_abs.max(perimeter * 1e-9) * 10.0 + 1e-7 * perimeter || p == q);

    let pts = if ccw_len <= cw_len { ccw_pts } else { cw_pts };
    Ok(PolyPath::new_uniform(dedup_consecutive(pts), SegmentKind::BoundaryGeodesic))
}

pub(crate) fn polyline_len(pts: &[Point]) -> f64 {
    pts.windows(2).map(|w| w[0].dist(w[1])).sum()
}

pub(crate) fn dedup_consecutive(pts: Vec<Point>) -> Vec<Point> {
    let mut out: Vec<Point> = Vec::with_capacity(pts.len());
    for p in pts {
        if out.last() != Some(&p) {
            out.push(p);
        }
    }
    out
}

/// The obstacle set inside a bounding rectangle.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PolygonalDomain {
    pub obstacles: Vec<SimplePolygon>,
    pub bounding_rect: Rect,
}

impl PolygonalDomain {
    /// Validate pairwise disjointness and strict containment in the rect.
    pub fn new(obstacles: Vec<SimplePolygon>, bounding_rect: Rect) -> Result<Self> {
        for (i, o) in obstacles.iter().enumerate() {
            for v in o.vertices() {
                if !bounding_rect.contains_strict(*v) {
                    return Err(Error::DegenerateInput(format!(
                        "obstacle {i} is not strictly inside the bounding rectangle"
                    )));
                }
            }
        }
        for i in 0..obstacles.len() {
            for j in (i + 1)..obstacles.len() {
                if polygons_intersect(&obstacles[i], &obstacles[j]) {
                    return Err(Error::OverlappingObstacles(i, j));
                }
            }
        }
        Ok(PolygonalDomain { obstacles, bounding_rect })
    }

    pub fn total_vertices(&self) -> usize {
        self.obstacles.iter().map(|o| o.len()).sum()
    }

    pub fn all_convex(&self) -> bool {
        self.obstacles.iter().all(|o| o.is_convex())
    }

    /// True iff `p` is in the free space (outside every open obstacle
    /// interior and inside the closed rectangle).
    pub fn in_free_space(&self, p: Point) -> bool {
        self.bounding_rect.contains(p)
            && self.obstacles.iter().all(|o| {
                locate_with_tolerance(o.vertices(), p, Tolerance::default())
                    != PointLocation::Inside
            })
    }
}

/// Closed-interior intersection test between two simple polygons.
pub fn polygons_intersect(a: &SimplePolygon, b: &SimplePolygon) -> bool {
    let ra = a.bounding_box();
    let rb = b.bounding_box();
    if ra.max.x < rb.min.x || rb.max.x < ra.min.x || ra.max.y < rb.min.y || rb.max.y < ra.min.y {
        return false;
    }
    for ea in a.edges() {
        for eb in b.edges() {
            if !segment_segment_params(ea, eb).is_empty() {
                return true;
            }
        }
    }
    a.locate(b.vertices()[0]) != PointLocation::Outside
        || b.locate(a.vertices()[0]) != PointLocation::Outside
}

/// True iff the open segment avoids all obstacle interiors. Grazing a
/// boundary counts as visible.
pub fn segment_visible(s: Segment, domain: &PolygonalDomain) -> bool {
    for o in &domain.obstacles {
        if !segment_avoids_polygon_interior(s, o) {
            return false;
        }
    }
    true
}

/// Distance from `p` to the nearest boundary point of the vertex cycle.
pub fn dist_to_boundary(vertices: &[Point], p: Point) -> f64 {
    let n = vertices.len();
    let mut best = f64::INFINITY;
    for i in 0..n {
        let a = vertices[i];
        let b = vertices[(i + 1) % n];
        let e = Segment::new(a, b);
        let len_sq = a.dist_sq(b);
        let t = if len_sq == 0.0 {
            0.0
        } else {
            (((p.x - a.x) * (b.x - a.x) + (p.y - a.y) * (b.y - a.y)) / len_sq).clamp(0.0, 1.0)
        };
        best = best.min(p.dist(e.at(t)));
    }
    best
}

/// Like [`locate_point`] but classifying points within `tol.eps_abs` of the
/// boundary as Boundary, so computed (inexact) boundary points behave.
pub fn locate_with_tolerance(vertices: &[Point], p: Point, tol: Tolerance) -> PointLocation {
    if dist_to_boundary(vertices, p) <= tol.eps_abs {
        return PointLocation::Boundary;
    }
    locate_point(vertices, p)
}

/// True iff the open segment does not pass through the interior of `poly`.
pub fn segment_avoids_polygon_interior(s: Segment, poly: &SimplePolygon) -> bool {
    let r = poly.bounding_box();
    let smin = Point::new(s.a.x.min(s.b.x), s.a.y.min(s.b.y));
    let smax = Point::new(s.a.x.max(s.b.x), s.a.y.max(s.b.y));
    if smax.x < r.min.x || r.max.x < smin.x || smax.y < r.min.y || r.max.y < smin.y {
        return true;
    }
    // Collect all parameters where the segment meets the boundary, then test
    // the midpoint of every resulting piece for strict interiority.
    let mut ts: Vec<f64> = vec![0.0, 1.0];
    for e in poly.edges() {
        ts.extend(segment_segment_params(s, e));
    }
    ts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    ts.dedup_by(|a, b| (*a - *b).abs() < 1e-15);
    for w in ts.windows(2) {
        let mid = s.at((w[0] + w[1]) / 2.0);
        if locate_with_tolerance(poly.vertices(), mid, Tolerance::default()) == PointLocation::Inside
        {
            return false;
        }
    }
    true
}
