//! Cone spanner over a sketch: admissible cones at corepolygon vertices,
//! Steiner points (nearest boundary point per cone), boundary arcs, and
//! Dijkstra queries.
//!
//! Cones are clipped to the tangent wedges at each vertex, so the nearest
//! boundary point inside a cone is always visible from the apex: any blocker
//! would put a strictly closer boundary point inside the same cone.

use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

use crate::geom::{
    normalize_angle, segment_visible, Point, PointLocation, PolygonalDomain, Rect, Segment,
    Tolerance,
};
use crate::oracle::dijkstra_generic;
use crate::sketch::EpsilonParams;
use crate::{Error, Result};

/// Half-open angular interval starting at `lo`, extending `width` radians CCW.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AngularInterval {
    pub lo: f64,
    pub width: f64,
}

impl AngularInterval {
    pub fn new(lo: f64, width: f64) -> Self {
        AngularInterval { lo: normalize_angle(lo), width }
    }

    pub fn contains(&self, ang: f64) -> bool {
        normalize_angle(ang - self.lo) <= self.width + 1e-12
    }

    /// Overlap with another interval, as zero, one, or two sub-intervals.
    pub fn intersect(&self, other: &AngularInterval) -> Vec<AngularInterval> {
        let (a0, a1) = (self.lo, self.lo + self.width);
        let mut out = Vec::new();
        for shift in [-std::f64::consts::TAU, 0.0, std::f64::consts::TAU] {
            let b0 = other.lo + shift;
            let b1 = b0 + other.width;
            let lo = a0.max(b0);
            let hi = a1.min(b1);
            if hi > lo + 1e-15 {
                out.push(AngularInterval::new(lo, hi - lo));
            }
        }
        out
    }
}

/// The k interior-disjoint cones of common angle partitioning the plane.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ConeFamily {
    pub count: usize,
    pub angle: f64,
}

impl ConeFamily {
    pub fn from_params(params: &EpsilonParams) -> Self {
        ConeFamily { count: params.cone_count, angle: std::f64::consts::TAU / params.cone_count as f64 }
    }

    pub fn cone(&self, i: usize) -> AngularInterval {
        AngularInterval::new(i as f64 * self.angle, self.angle)
    }

    /// Bisector direction of cone `i`.
    pub fn orientation(&self, i: usize) -> f64 {
        normalize_angle((i as f64 + 0.5) * self.angle)
    }
}

/// The two tangent wedges at a strictly convex CCW vertex: the angular
/// regions a geodesic can occupy right after turning at the vertex.
pub fn tangent_wedges(prev: Point, v: Point, next: Point) -> [AngularInterval; 2] {
    let to_next = v.angle_to(next);
    let to_prev = v.angle_to(prev);
    let from_prev = prev.angle_to(v);
    let from_next = next.angle_to(v);
    let w1 = normalize_angle(to_next - from_prev);
    let w2 = normalize_angle(from_next - to_prev);
    [
        AngularInterval::new(from_prev, w1),
        AngularInterval::new(to_prev, w2),
    ]
}

/// Family indices of the cones admissible at vertex `v` (overlapping either
/// tangent wedge).
pub fn admissible_cones(prev: Point, v: Point, next: Point, family: &ConeFamily) -> Vec<usize> {
    let wedges = tangent_wedges(prev, v, next);
    (0..family.count)
        .filter(|&i| {
            let c = family.cone(i);
            wedges.iter().any(|w| !c.intersect(w).is_empty())
        })
        .collect()
}

/// Admissible cones clipped to the tangent wedges, keyed by family index.
pub fn clipped_admissible_cones(
    prev: Point,
    v: Point,
    next: Point,
    family: &ConeFamily,
) -> Vec<(usize, AngularInterval)> {
    let wedges = tangent_wedges(prev, v, next);
    let mut out = Vec::new();
    for i in 0..family.count {
        let c = family.cone(i);
        for w in &wedges {
            for piece in c.intersect(w) {
                out.push((i, piece));
            }
        }
    }
    out
}

/// A boundary point found inside a cone: obstacle, edge-parameterized
/// position, and distance from the apex.
#[derive(Debug, Clone, Copy)]
pub struct ConePoint {
    pub obstacle: usize,
    pub edge: usize,
    pub t: f64,
    pub arc: f64,
    pub point: Point,
    pub dist: f64,
}

fn rect_dist(p: Point, r: &Rect) -> f64 {
    let dx = (r.min.x - p.x).max(0.0).max(p.x - r.max.x);
    let dy = (r.min.y - p.y).max(0.0).max(p.y - r.max.y);
    (dx * dx + dy * dy).sqrt()
}

/// Nearest point of edge (a,b) within the angular sector from `apex`, as
/// (distance, parameter on the edge).
fn nearest_on_edge_in_sector(
    apex: Point,
    sector: &AngularInterval,
    a: Point,
    b: Point,
) -> Option<(f64, f64)> {
    let mut best: Option<(f64, f64)> = None;
    let mut consider = |t: f64| {
        let q = Segment::new(a, b).at(t);
        let d = apex.dist(q);
        if d > 1e-12 && !sector.contains(apex.angle_to(q)) {
            return;
        }
        if best.map_or(true, |(bd, _)| d < bd) {
            best = Some((d, t));
        }
    };
    consider(0.0);
    consider(1.0);
    // Perpendicular foot.
    let ab = (b.x - a.x, b.y - a.y);
    let len_sq = ab.0 * ab.0 + ab.1 * ab.1;
    if len_sq > 0.0 {
        let t = ((apex.x - a.x) * ab.0 + (apex.y - a.y) * ab.1) / len_sq;
        if t > 0.0 && t < 1.0 {
            consider(t);
        }
        // Sector boundary rays.
        for ang in [sector.lo, sector.lo + sector.width] {
            let d = (ang.cos(), ang.sin());
            let denom = ab.0 * d.1 - ab.1 * d.0;
            if denom.abs() > 1e-15 {
                let t = ((apex.x - a.x) * d.1 - (apex.y - a.y) * d.0) / denom;
                let s = (ab.0 * (apex.y - a.y) - ab.1 * (apex.x - a.x)) / -denom;
                if (0.0..=1.0).contains(&t) && s >= 0.0 {
                    consider(t);
                }
            }
        }
    }
    best
}

/// Nearest obstacle-boundary point inside the sector at `apex`, scanning every
/// obstacle except `exclude`. Ties break by (obstacle, boundary arc).
pub fn nearest_in_sector(
    apex: Point,
    sector: &AngularInterval,
    omega: &PolygonalDomain,
    exclude: Option<usize>,
) -> Option<ConePoint> {
    let mut best: Option<ConePoint> = None;
    for (oi, poly) in omega.obstacles.iter().enumerate() {
        if exclude == Some(oi) {
            continue;
        }
        if let Some(b) = &best {
            if rect_dist(apex, &poly.bounding_box()) > b.dist + 1e-12 {
                continue;
            }
        }
        let vs = poly.vertices();
        let mut arc = 0.0;
        for ei in 0..vs.len() {
            let a = vs[ei];
            let bpt = vs[(ei + 1) % vs.len()];
            let elen = a.dist(bpt);
            if let Some((d, t)) = nearest_on_edge_in_sector(apex, sector, a, bpt) {
                let cand = ConePoint {
                    obstacle: oi,
                    edge: ei,
                    t,
                    arc: arc + t * elen,
                    point: Segment::new(a, bpt).at(t),
                    dist: d,
                };
                let better = match &best {
                    None => true,
                    Some(b) => {
                        d < b.dist - 1e-12
                            || (d <= b.dist + 1e-12
                                && (cand.obstacle, cand.arc) < (b.obstacle, b.arc))
                    }
                };
                if better {
                    best = Some(cand);
                }
            }
            arc += elen;
        }
    }
    best
}

/// Per-orientation nearest-site structure. The planar-subdivision point
/// location is realized as a direct scan with identical answers;
/// the asymptotic query time is documented as out of scope.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConeVoronoi {
    pub family_index: usize,
    pub family: ConeFamily,
}

impl ConeVoronoi {
    /// Nearest boundary site inside cone `family_index` translated to `p`.
    pub fn locate(
        &self,
        p: Point,
        omega: &PolygonalDomain,
        exclude: Option<usize>,
    ) -> Option<ConePoint> {
        nearest_in_sector(p, &self.family.cone(self.family_index), omega, exclude)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum NodeKind {
    CoresetVertex,
    SteinerPoint,
    QueryPoint,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct SpannerNode {
    pub kind: NodeKind,
    pub point: Point,
    /// Hosting obstacle and boundary arc parameter, for boundary nodes.
    pub host: Option<(usize, f64)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EdgeKind {
    Cone,
    BoundaryArc,
    CorridorPath,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct SpannerEdge {
    pub u: usize,
    pub v: usize,
    pub weight: f64,
    pub kind: EdgeKind,
}

/// The finished spanner graph.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Spanner {
    pub family: ConeFamily,
    pub nodes: Vec<SpannerNode>,
    pub edges: Vec<SpannerEdge>,
}

impl Spanner {
    pub fn adjacency(&self) -> Vec<Vec<(usize, f64)>> {
        let mut adj = vec![Vec::new(); self.nodes.len()];
        for e in &self.edges {
            adj[e.u].push((e.v, e.weight));
            adj[e.v].push((e.u, e.weight));
        }
        adj
    }

    /// Shortest path between two nodes; infinite distance when unreachable.
    pub fn dijkstra(&self, s: usize, t: usize) -> Result<(f64, Vec<usize>)> {
        for id in [s, t] {
            if id >= self.nodes.len() {
                return Err(Error::NodeNotFound(id));
            }
        }
        let adj = self.adjacency();
        let (dist, prev) = dijkstra_generic(self.nodes.len(), s, |u| adj[u].clone());
        if !dist[t].is_finite() {
            return Ok((f64::INFINITY, Vec::new()));
        }
        let mut path = vec![t];
        let mut cur = t;
        while let Some(p) = prev[cur] {
            path.push(p);
            cur = p;
        }
        path.reverse();
        Ok((dist[t], path))
    }
}

/// Incremental spanner construction over a convex sketch domain.
pub struct SpannerBuilder<'a> {
    omega: &'a PolygonalDomain,
    family: ConeFamily,
    nodes: Vec<SpannerNode>,
    cone_edges: BTreeSet<(usize, usize)>,
    extra_edges: Vec<SpannerEdge>,
    /// Per obstacle: (arc, node id), unsorted until `finish`.
    boundary: Vec<Vec<(f64, usize)>>,
    perims: Vec<f64>,
}

impl<'a> SpannerBuilder<'a> {
    /// Build coreset-vertex nodes, Steiner points, and cone edges.
    pub fn new(omega: &'a PolygonalDomain, params: &EpsilonParams) -> Result<Self> {
        for (i, o) in omega.obstacles.iter().enumerate() {
            if !o.is_convex() {
                return Err(Error::NonConvexObstacle(i));
            }
        }
        let family = ConeFamily::from_params(params);
        let mut b = SpannerBuilder {
            omega,
            family,
            nodes: Vec::new(),
            cone_edges: BTreeSet::new(),
            extra_edges: Vec::new(),
            boundary: vec![Vec::new(); omega.obstacles.len()],
            perims: omega.obstacles.iter().map(|o| o.perimeter()).collect(),
        };
        for (oi, poly) in omega.obstacles.iter().enumerate() {
            let vs = poly.vertices();
            let mut arc = 0.0;
            for j in 0..vs.len() {
                let id = b.nodes.len();
                b.nodes.push(SpannerNode {
                    kind: NodeKind::CoresetVertex,
                    point: vs[j],
                    host: Some((oi, arc)),
                });
                b.boundary[oi].push((arc, id));
                arc += vs[j].dist(vs[(j + 1) % vs.len()]);
            }
        }
        // Steiner points from the clipped admissible cones of every vertex.
        let mut offset = 0;
        for (oi, poly) in omega.obstacles.iter().enumerate() {
            let vs = poly.vertices();
            let n = vs.len();
            for j in 0..n {
                let node_id = offset + j;
                let prev = vs[(j + n - 1) % n];
                let next = vs[(j + 1) % n];
                for (_, sector) in clipped_admissible_cones(prev, vs[j], next, &family) {
                    if let Some(cp) = nearest_in_sector(vs[j], &sector, omega, Some(oi)) {
                        let sid = b.attach_boundary_node(cp);
                        b.add_cone_edge(node_id, sid);
                    }
                }
            }
            offset += n;
        }
        Ok(b)
    }

    pub fn family(&self) -> ConeFamily {
        self.family
    }

    /// Node for a boundary point, reusing any existing node at the same arc
    /// position (wraparound included).
    fn attach_boundary_node(&mut self, cp: ConePoint) -> usize {
        let per = self.perims[cp.obstacle];
        for &(arc, id) in &self.boundary[cp.obstacle] {
            let d = (arc - cp.arc).abs();
            if d < 1e-9 || (per - d).abs() < 1e-9 {
                return id;
            }
        }
        let id = self.nodes.len();
        self.nodes.push(SpannerNode {
            kind: NodeKind::SteinerPoint,
            point: cp.point,
            host: Some((cp.obstacle, cp.arc)),
        });
        self.boundary[cp.obstacle].push((cp.arc, id));
        id
    }

    fn add_cone_edge(&mut self, u: usize, v: usize) {
        if u != v {
            self.cone_edges.insert((u.min(v), u.max(v)));
        }
    }

    /// Insert a free-space query point: all k cones, nearest boundary point
    /// per cone. A point lying on an obstacle boundary excludes that obstacle
    /// from its own cones and is spliced into its boundary.
    pub fn insert_query_point(&mut self, p: Point) -> Result<usize> {
        if !self.omega.in_free_space(p) {
            return Err(Error::PointInsideObstacle);
        }
        let host = self
            .omega
            .obstacles
            .iter()
            .position(|o| o.locate(p) == PointLocation::Boundary);
        let id = match host {
            Some(oi) => {
                let pos =
                    crate::geom::locate_on_boundary(self.omega.obstacles[oi].vertices(), p, Tolerance::default())
                        .ok_or(Error::PointNotOnBoundary)?;
                self.attach_boundary_node(ConePoint {
                    obstacle: oi,
                    edge: pos.edge,
                    t: 0.0,
                    arc: pos.arc,
                    point: p,
                    dist: 0.0,
                })
            }
            None => {
                let id = self.nodes.len();
                self.nodes.push(SpannerNode { kind: NodeKind::QueryPoint, point: p, host: None });
                id
            }
        };
        // A boundary-hosted point only looks outward: cones dipping into the
        // host obstacle would otherwise emit edges crossing it, since the
        // host is excluded from the scan.
        let allowed = host.map(|oi| {
            let vs = self.omega.obstacles[oi].vertices();
            let n = vs.len();
            let at = |j: usize| vs[j % n];
            let pos = crate::geom::locate_on_boundary(vs, p, Tolerance::default()).unwrap();
            let (a, b) = (at(pos.edge), at(pos.edge + 1));
            if p.dist(a) < 1e-9 || p.dist(b) < 1e-9 {
                let j = if p.dist(a) < 1e-9 { pos.edge } else { pos.edge + 1 };
                let (prev, next) = (at(j + n - 1), at(j + 1));
                let lo = p.angle_to(prev);
                AngularInterval::new(lo, normalize_angle(p.angle_to(next) - lo))
            } else {
                AngularInterval::new(a.angle_to(b) - std::f64::consts::PI, std::f64::consts::PI)
            }
        });
        for i in 0..self.family.count {
            let cone = self.family.cone(i);
            let sectors = match &allowed {
                Some(free) => cone.intersect(free),
                None => vec![cone],
            };
            for sector in sectors {
                if let Some(cp) = nearest_in_sector(p, &sector, self.omega, host) {
                    let sid = self.attach_boundary_node(cp);
                    self.add_cone_edge(id, sid);
                }
            }
        }
        Ok(id)
    }

    /// Direct edge between two nodes when their segment is visible in Ω.
    pub fn connect_if_visible(&mut self, u: usize, v: usize) {
        let s = Segment::new(self.nodes[u].point, self.nodes[v].point);
        if u != v && segment_visible(s, self.omega) {
            self.extra_edges.push(SpannerEdge { u, v, weight: s.len(), kind: EdgeKind::Cone });
        }
    }

    /// Corridor-path edge with an explicit weight.
    pub fn add_corridor_edge(&mut self, u: usize, v: usize, weight: f64) {
        self.extra_edges.push(SpannerEdge { u, v, weight, kind: EdgeKind::CorridorPath });
    }

    /// Sort boundary nodes, emit boundary arcs, and freeze the graph.
    pub fn finish(mut self) -> Spanner {
        let mut edges: Vec<SpannerEdge> = self
            .cone_edges
            .iter()
            .map(|&(u, v)| SpannerEdge {
                u,
                v,
                weight: self.nodes[u].point.dist(self.nodes[v].point),
                kind: EdgeKind::Cone,
            })
            .collect();
        edges.append(&mut self.extra_edges);
        for (oi, list) in self.boundary.iter_mut().enumerate() {
            list.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
            let m = list.len();
            if m < 2 {
                continue;
            }
            for idx in 0..m {
                let (arc_a, u) = list[idx];
                let (arc_b, v) = list[(idx + 1) % m];
                let w = if idx + 1 == m {
                    self.perims[oi] - arc_a + arc_b
                } else {
                    arc_b - arc_a
                };
                if m == 2 && idx == 1 && w < 1e-12 {
                    continue;
                }
                edges.push(SpannerEdge { u, v, weight: w, kind: EdgeKind::BoundaryArc });
            }
        }
        Spanner { family: self.family, nodes: self.nodes, edges }
    }
}

/// Build the plain spanner of a convex sketch domain (no query points).
pub fn build_spanner(omega: &PolygonalDomain, params: &EpsilonParams) -> Result<Spanner> {
    Ok(SpannerBuilder::new(omega, params)?.finish())
}
