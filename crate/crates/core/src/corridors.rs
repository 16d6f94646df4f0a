//! Corridor decomposition for domains with arbitrary simple-polygon
//! obstacles: triangulate the free space, contract the dual to a
//! degree-three multigraph whose edges are corridors, classify each
//! corridor's hourglass, and route over a graph built from boundary
//! chains, cone edges, and corridor-path links.

use std::collections::HashMap;

use crate::geom::{
    locate_point, orient2d, signed_area2, segment_visible, Point, PointLocation,
    PolygonalDomain, Segment,
};
use crate::path::{PolyPath, SegmentKind};
use crate::pipeline;
use crate::sketch::{make_params, EpsilonParams, ParamMode};
use crate::spanner::{
    clipped_admissible_cones, nearest_in_sector, AngularInterval, ConeFamily, EdgeKind,
    NodeKind, Spanner, SpannerEdge, SpannerNode,
};
use crate::{Error, Result};

/// A triangulation of the free space between the bounding rectangle and the
/// obstacle boundaries. Points are shared across triangles; each point
/// remembers which obstacle ring it came from (`None` for rectangle corners).
#[derive(Debug, Clone)]
pub struct Triangulation {
    pub points: Vec<Point>,
    /// Owning obstacle of each point, `None` for the four rectangle corners.
    pub owner: Vec<Option<usize>>,
    /// `(obstacle, ring index)` of each point, when it lies on an obstacle.
    pub ring_pos: Vec<Option<(usize, usize)>>,
    /// Counterclockwise triangles as point-index triples.
    pub triangles: Vec<[usize; 3]>,
}

impl Triangulation {
    pub fn triangle_area(&self, t: usize) -> f64 {
        let [a, b, c] = self.triangles[t];
        signed_area2(&[self.points[a], self.points[b], self.points[c]]) / 2.0
    }

    pub fn total_area(&self) -> f64 {
        (0..self.triangles.len()).map(|t| self.triangle_area(t)).sum()
    }

    /// First triangle containing `p` (boundary inclusive), if any.
    pub fn triangle_containing(&self, p: Point) -> Option<usize> {
        self.triangles.iter().position(|&[a, b, c]| {
            locate_point(&[self.points[a], self.points[b], self.points[c]], p)
                != PointLocation::Outside
        })
    }

    /// Map from undirected point-index edges to the triangles sharing them.
    pub fn edge_map(&self) -> HashMap<(usize, usize), Vec<usize>> {
        let mut m: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for (ti, tri) in self.triangles.iter().enumerate() {
            for i in 0..3 {
                let (u, v) = (tri[i], tri[(i + 1) % 3]);
                m.entry((u.min(v), u.max(v))).or_default().push(ti);
            }
        }
        m
    }
}

/// Triangulate the free space of `domain` via ear clipping with the
/// obstacles as holes.
pub fn triangulate_free_space(domain: &PolygonalDomain) -> Result<Triangulation> {
    let mut points = Vec::new();
    let mut owner = Vec::new();
    let mut ring_pos = Vec::new();
    let mut flat = Vec::new();
    for c in domain.bounding_rect.corners() {
        points.push(c);
        owner.push(None);
        ring_pos.push(None);
        flat.extend_from_slice(&[c.x, c.y]);
    }
    let mut holes = Vec::new();
    for (oi, obs) in domain.obstacles.iter().enumerate() {
        holes.push(points.len());
        for (vi, &v) in obs.vertices().iter().enumerate() {
            points.push(v);
            owner.push(Some(oi));
            ring_pos.push(Some((oi, vi)));
            flat.extend_from_slice(&[v.x, v.y]);
        }
    }
    let raw = earcutr::earcut(&flat, &holes, 2)
        .map_err(|e| Error::DegenerateInput(format!("triangulation failed: {e:?}")))?;
    let mut triangles = Vec::with_capacity(raw.len() / 3);
    for t in raw.chunks_exact(3) {
        let mut tri = [t[0], t[1], t[2]];
        if signed_area2(&[points[tri[0]], points[tri[1]], points[tri[2]]]) < 0.0 {
            tri.swap(1, 2);
        }
        triangles.push(tri);
    }
    Ok(Triangulation { points, owner, ring_pos, triangles })
}

/// A corridor of the contracted dual: a fan-free walk of triangles between
/// two junction (or pinned) triangles, with oriented portals along the way.
#[derive(Debug, Clone)]
pub struct Corridor {
    /// Triangle walk from the first junction to the second, inclusive.
    pub triangles: Vec<usize>,
    /// Shared edges between consecutive triangles, as `(left, right)` point
    /// indices oriented for a walk from `triangles[0]` toward the end.
    pub portals: Vec<(usize, usize)>,
}

/// The contracted dual graph: every surviving unpinned triangle has degree
/// three, and each edge is a corridor.
#[derive(Debug, Clone)]
pub struct DualGraph3 {
    /// Surviving triangle ids (junctions plus the pinned source/target).
    pub nodes: Vec<usize>,
    pub corridors: Vec<Corridor>,
}

/// Contract the triangulation dual to degree three, keeping the triangles
/// containing `s` and `t` pinned.
pub fn reduce_to_g3(tri: &Triangulation, s_tri: usize, t_tri: usize) -> DualGraph3 {
    struct DualEdge {
        a: usize,
        b: usize,
        /// Triangles strictly between `a` and `b`, ordered from `a` to `b`.
        chain: Vec<usize>,
        alive: bool,
    }

    let mut edges: Vec<DualEdge> = Vec::new();
    let mut inc: HashMap<usize, Vec<usize>> = HashMap::new();
    for tris in tri.edge_map().values() {
        if tris.len() == 2 {
            let id = edges.len();
            edges.push(DualEdge { a: tris[0], b: tris[1], chain: Vec::new(), alive: true });
            inc.entry(tris[0]).or_default().push(id);
            inc.entry(tris[1]).or_default().push(id);
        }
    }
    for t in 0..tri.triangles.len() {
        inc.entry(t).or_default();
    }
    let pinned = |t: usize| t == s_tri || t == t_tri;
    let alive_edges = |inc: &HashMap<usize, Vec<usize>>, edges: &[DualEdge], t: usize| {
        inc[&t].iter().copied().filter(|&e| edges[e].alive).collect::<Vec<_>>()
    };

    let mut queue: Vec<usize> = (0..tri.triangles.len()).collect();
    let mut removed = vec![false; tri.triangles.len()];
    while let Some(t) = queue.pop() {
        if removed[t] || pinned(t) {
            continue;
        }
        let live = alive_edges(&inc, &edges, t);
        match live.len() {
            0 => removed[t] = true,
            1 => {
                // Dead-end triangle: prune it together with its edge.
                let e = live[0];
                edges[e].alive = false;
                removed[t] = true;
                let other = if edges[e].a == t { edges[e].b } else { edges[e].a };
                queue.push(other);
            }
            2 if live[0] != live[1] => {
                let (e1, e2) = (live[0], live[1]);
                if edges[e1].a == edges[e1].b || edges[e2].a == edges[e2].b {
                    continue; // loop at t, leave it in place
                }
                // Merge the two edges through t into one chain far -> t -> far.
                let (left_end, mut chain) = if edges[e1].a == t {
                    let mut c = edges[e1].chain.clone();
                    c.reverse();
                    (edges[e1].b, c)
                } else {
                    (edges[e1].a, edges[e1].chain.clone())
                };
                let (right_end, right_chain) = if edges[e2].a == t {
                    (edges[e2].b, edges[e2].chain.clone())
                } else {
                    let mut c = edges[e2].chain.clone();
                    c.reverse();
                    (edges[e2].a, c)
                };
                chain.push(t);
                chain.extend(right_chain);
                edges[e1].alive = false;
                edges[e2].alive = false;
                removed[t] = true;
                let id = edges.len();
                edges.push(DualEdge { a: left_end, b: right_end, chain, alive: true });
                inc.get_mut(&left_end).unwrap().push(id);
                inc.get_mut(&right_end).unwrap().push(id);
                queue.push(left_end);
                queue.push(right_end);
            }
            _ => {}
        }
    }

    let nodes: Vec<usize> =
        (0..tri.triangles.len()).filter(|&t| !removed[t] || pinned(t)).collect();
    let portal_between = |a: usize, b: usize| -> (usize, usize) {
        let ta = tri.triangles[a];
        let tb = tri.triangles[b];
        let common: Vec<usize> = ta.iter().copied().filter(|v| tb.contains(v)).collect();
        debug_assert_eq!(common.len(), 2);
        let w = tb.iter().copied().find(|v| !common.contains(v)).unwrap();
        let (u, v) = (common[0], common[1]);
        if orient2d(tri.points[u], tri.points[v], tri.points[w]) > 0 {
            (u, v)
        } else {
            (v, u)
        }
    };
    let mut corridors = Vec::new();
    for e in edges.iter().filter(|e| e.alive) {
        let mut walk = Vec::with_capacity(e.chain.len() + 2);
        walk.push(e.a);
        walk.extend_from_slice(&e.chain);
        walk.push(e.b);
        let portals =
            walk.windows(2).map(|w| portal_between(w[0], w[1])).collect::<Vec<_>>();
        corridors.push(Corridor { triangles: walk, portals });
    }
    DualGraph3 { nodes, corridors }
}

/// Geodesic between two channel endpoints through a portal sequence, as
/// point indices. Portals must be oriented `(left, right)` along the walk.
pub fn channel_path(
    pts: &[Point],
    portals: &[(usize, usize)],
    start: usize,
    end: usize,
) -> Vec<usize> {
    let mut ps = Vec::with_capacity(portals.len() + 2);
    ps.push((start, start));
    ps.extend_from_slice(portals);
    ps.push((end, end));

    let mut path = vec![start];
    let (mut apex, mut left, mut right) = (start, start, start);
    let (mut left_i, mut right_i) = (0usize, 0usize);
    let mut i = 1;
    while i < ps.len() {
        let (l, r) = ps[i];
        // Tighten the right side of the funnel.
        if r != apex && (right == apex || orient2d(pts[apex], pts[right], pts[r]) >= 0) {
            if left == apex || orient2d(pts[apex], pts[left], pts[r]) < 0 {
                right = r;
                right_i = i;
            } else {
                // Right sweep crossed the left side: the left point is on
                // the geodesic and becomes the new apex.
                path.push(left);
                apex = left;
                right = apex;
                right_i = left_i;
                i = left_i + 1;
                continue;
            }
        }
        // Tighten the left side.
        if l != apex && (left == apex || orient2d(pts[apex], pts[left], pts[l]) <= 0) {
            if right == apex || orient2d(pts[apex], pts[right], pts[l]) > 0 {
                left = l;
                left_i = i;
            } else {
                path.push(right);
                apex = right;
                left = apex;
                left_i = right_i;
                i = right_i + 1;
                continue;
            }
        }
        i += 1;
    }
    if *path.last().unwrap() != end {
        path.push(end);
    }
    path.dedup();
    path
}

/// An hourglass: the pair of geodesics between a corridor's two doors.
#[derive(Debug, Clone)]
pub struct Hourglass {
    /// True when both sides share a common subchain (the corridor path).
    pub closed: bool,
    /// Geodesic from the first door's left endpoint to the second's.
    pub side_left: Vec<usize>,
    pub side_right: Vec<usize>,
    /// Shared subchain of a closed hourglass, from the first door side.
    pub path: Vec<usize>,
}

/// Build the hourglass of a corridor by funneling each door side through
/// the corridor's portals.
pub fn hourglass_of(pts: &[Point], c: &Corridor) -> Hourglass {
    let first = c.portals[0];
    let last = *c.portals.last().unwrap();
    let inner: &[(usize, usize)] =
        if c.portals.len() >= 2 { &c.portals[1..c.portals.len() - 1] } else { &[] };
    let side_left = channel_path(pts, inner, first.0, last.0);
    let side_right = channel_path(pts, inner, first.1, last.1);
    let on_right: HashMap<usize, usize> =
        side_right.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let common: Vec<usize> = side_left
        .iter()
        .enumerate()
        .filter(|(_, v)| on_right.contains_key(v))
        .map(|(i, _)| i)
        .collect();
    if common.is_empty() {
        return Hourglass { closed: false, side_left, side_right, path: Vec::new() };
    }
    let path = side_left[common[0]..=*common.last().unwrap()].to_vec();
    Hourglass { closed: true, side_left, side_right, path }
}

/// A corridor-path link between two pseudo-apices, weighted by the geodesic
/// length along one hourglass side.
#[derive(Debug, Clone)]
pub struct CorridorLink {
    pub polyline: Vec<usize>,
    pub weight: f64,
}

/// Boundary chains extracted from the hourglasses and junction triangles,
/// with per-chain coreset vertices and corridor-path links.
#[derive(Debug, Clone)]
pub struct ChainSketch {
    /// Maximal same-obstacle sections of hourglass sides and junction edges.
    pub chains: Vec<Vec<usize>>,
    /// Point indices selected as cone apices (chain patch endpoints).
    pub coreset: Vec<usize>,
    pub links: Vec<CorridorLink>,
}

fn polyline_len(pts: &[Point], ids: &[usize]) -> f64 {
    ids.windows(2).map(|w| pts[w[0]].dist(pts[w[1]])).sum()
}

/// Maximal prefix of `side` whose points share the owner of the first point,
/// as an index into `side` (the funnel pseudo-apex).
fn pseudo_apex(tri: &Triangulation, side: &[usize]) -> usize {
    let base = tri.owner[side[0]];
    let mut last = 0;
    for (i, &v) in side.iter().enumerate() {
        if tri.owner[v] == base {
            last = i;
        } else {
            break;
        }
    }
    last
}

/// Split a polyline into maximal sections of points sharing one owner.
fn owner_sections(tri: &Triangulation, side: &[usize]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut start = 0;
    for i in 1..side.len() {
        if tri.owner[side[i]] != tri.owner[side[start]] {
            if i - start >= 2 {
                out.push(side[start..i].to_vec());
            }
            start = i;
        }
    }
    if side.len() - start >= 2 {
        out.push(side[start..].to_vec());
    }
    out
}

/// Coreset of an open chain: both endpoints, plus a vertex whenever the
/// accumulated turn since the previous pick exceeds the patch angle.
fn chain_coreset(pts: &[Point], chain: &[usize], patch_angle: f64) -> Vec<usize> {
    let mut out = vec![chain[0]];
    let mut acc = 0.0;
    for i in 1..chain.len().saturating_sub(1) {
        let (p, v, n) = (pts[chain[i - 1]], pts[chain[i]], pts[chain[i + 1]]);
        let a1 = p.angle_to(v);
        let a2 = v.angle_to(n);
        let mut turn = (a2 - a1).rem_euclid(2.0 * std::f64::consts::PI);
        if turn > std::f64::consts::PI {
            turn = 2.0 * std::f64::consts::PI - turn;
        }
        acc += turn;
        if acc > patch_angle {
            out.push(chain[i]);
            acc = 0.0;
        }
    }
    if *out.last().unwrap() != *chain.last().unwrap() {
        out.push(*chain.last().unwrap());
    }
    out
}

/// Extract chains, coreset vertices, and corridor-path links from the
/// hourglasses plus the obstacle edges of surviving junction triangles.
pub fn build_chain_sketch(
    tri: &Triangulation,
    g3: &DualGraph3,
    params: &EpsilonParams,
) -> ChainSketch {
    let mut chains: Vec<Vec<usize>> = Vec::new();
    let mut links = Vec::new();
    for c in &g3.corridors {
        let hg = hourglass_of(&tri.points, c);
        for side in [&hg.side_left, &hg.side_right] {
            if side.len() < 2 {
                continue;
            }
            if !hg.closed {
                chains.extend(owner_sections(tri, side));
                continue;
            }
            // Closed: keep the funnel sections up to each pseudo-apex and
            // link the two pseudo-apices along the side.
            let p1 = pseudo_apex(tri, side);
            let rev: Vec<usize> = side.iter().rev().copied().collect();
            let p2 = side.len() - 1 - pseudo_apex(tri, &rev);
            if p1 >= 1 {
                chains.push(side[..=p1].to_vec());
            }
            if p2 + 1 < side.len() {
                chains.push(side[p2..].to_vec());
            }
            let (lo, hi) = (p1.min(p2), p1.max(p2));
            if lo < hi {
                let polyline = side[lo..=hi].to_vec();
                let weight = polyline_len(&tri.points, &polyline);
                links.push(CorridorLink { polyline, weight });
            }
        }
    }
    // Obstacle edges of junction triangles are single-edge chains.
    for &t in &g3.nodes {
        let v = tri.triangles[t];
        for i in 0..3 {
            let (a, b) = (v[i], v[(i + 1) % 3]);
            if let (Some((oa, ia)), Some((ob, ib))) = (tri.ring_pos[a], tri.ring_pos[b]) {
                if oa == ob {
                    let ring = ia.abs_diff(ib);
                    if ring == 1 || ring + 1 == ringsize(tri, oa) {
                        chains.push(vec![a, b]);
                    }
                }
            }
        }
    }
    let mut coreset: Vec<usize> = chains
        .iter()
        .flat_map(|ch| chain_coreset(&tri.points, ch, params.patch_angle))
        .filter(|&v| tri.owner[v].is_some())
        .collect();
    coreset.sort_unstable();
    coreset.dedup();
    ChainSketch { chains, coreset, links }
}

fn ringsize(tri: &Triangulation, obstacle: usize) -> usize {
    tri.ring_pos.iter().flatten().filter(|(o, _)| *o == obstacle).count()
}

/// Graph builder over the original obstacle boundaries: every obstacle
/// vertex is a node, Steiner points splice into the arc order, and
/// boundary arcs connect consecutive nodes (always straight segments
/// because no original vertex lies strictly between neighbors).
struct BoundaryGraph<'a> {
    domain: &'a PolygonalDomain,
    nodes: Vec<SpannerNode>,
    edges: Vec<SpannerEdge>,
    /// Per obstacle: `(arc, node)` pairs, unsorted until `finish`.
    boundary: Vec<Vec<(f64, usize)>>,
    perim: Vec<f64>,
    /// Triangulation point index to node id.
    point_node: HashMap<usize, usize>,
}

impl<'a> BoundaryGraph<'a> {
    fn new(domain: &'a PolygonalDomain, tri: &Triangulation) -> Self {
        let mut g = BoundaryGraph {
            domain,
            nodes: Vec::new(),
            edges: Vec::new(),
            boundary: vec![Vec::new(); domain.obstacles.len()],
            perim: domain.obstacles.iter().map(|o| o.perimeter()).collect(),
            point_node: HashMap::new(),
        };
        for (pi, &p) in tri.points.iter().enumerate() {
            let id = g.nodes.len();
            match tri.ring_pos[pi] {
                Some((oi, vi)) => {
                    let vs = g.domain.obstacles[oi].vertices();
                    let arc: f64 = (0..vi).map(|k| vs[k].dist(vs[k + 1])).sum();
                    g.nodes.push(SpannerNode {
                        kind: NodeKind::CoresetVertex,
                        point: p,
                        host: Some((oi, arc)),
                    });
                    g.boundary[oi].push((arc, id));
                }
                None => {
                    g.nodes.push(SpannerNode {
                        kind: NodeKind::SteinerPoint,
                        point: p,
                        host: None,
                    });
                }
            }
            g.point_node.insert(pi, id);
        }
        g
    }

    /// Node for a boundary point at `arc` on `obstacle`, reusing any node
    /// within tolerance (including across the wraparound).
    fn attach(&mut self, obstacle: usize, arc: f64, point: Point) -> usize {
        let perim = self.perim[obstacle];
        for &(a, id) in &self.boundary[obstacle] {
            let d = (a - arc).abs();
            if d < 1e-9 || (perim - d).abs() < 1e-9 {
                return id;
            }
        }
        let id = self.nodes.len();
        self.nodes.push(SpannerNode {
            kind: NodeKind::SteinerPoint,
            point,
            host: Some((obstacle, arc)),
        });
        self.boundary[obstacle].push((arc, id));
        id
    }

    fn add_node(&mut self, kind: NodeKind, point: Point) -> usize {
        let id = self.nodes.len();
        self.nodes.push(SpannerNode { kind, point, host: None });
        id
    }

    fn add_edge(&mut self, u: usize, v: usize, kind: EdgeKind) {
        if u == v {
            return;
        }
        let w = self.nodes[u].point.dist(self.nodes[v].point);
        self.edges.push(SpannerEdge { u, v, weight: w, kind });
    }

    /// Cone edges from `apex` over the given sectors, keeping only targets
    /// that are actually visible.
    fn add_cone_edges(&mut self, apex_id: usize, sectors: &[AngularInterval]) {
        let apex = self.nodes[apex_id].point;
        for sector in sectors {
            let Some(cp) = nearest_in_sector(apex, sector, self.domain, None) else {
                continue;
            };
            if cp.dist < 1e-9 {
                continue;
            }
            if !segment_visible(Segment::new(apex, cp.point), self.domain) {
                continue;
            }
            let target = self.attach(cp.obstacle, cp.arc, cp.point);
            self.add_edge(apex_id, target, EdgeKind::Cone);
        }
    }

    fn finish(mut self, family: ConeFamily) -> Spanner {
        for oi in 0..self.boundary.len() {
            let mut list = std::mem::take(&mut self.boundary[oi]);
            list.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
            for w in list.windows(2) {
                self.add_edge(w[0].1, w[1].1, EdgeKind::BoundaryArc);
            }
            if list.len() > 2 {
                self.add_edge(list[list.len() - 1].1, list[0].1, EdgeKind::BoundaryArc);
            }
        }
        Spanner { family, nodes: self.nodes, edges: self.edges }
    }
}

/// Approximate shortest path for domains whose obstacles may be arbitrary
/// simple polygons. Convex inputs delegate to the convex pipeline.
pub fn approx_shortest_path_simple(
    domain: &PolygonalDomain,
    s: Point,
    t: Point,
    eps: f64,
) -> Result<PolyPath> {
    if domain.obstacles.iter().all(|o| o.is_convex()) {
        return pipeline::approx_shortest_path_convex(domain, s, t, eps);
    }
    let params = make_params(eps, ParamMode::SingleShot)?;
    for p in [s, t] {
        if !domain.in_free_space(p) {
            return Err(Error::PointInsideObstacle);
        }
    }
    if segment_visible(Segment::new(s, t), domain) {
        return Ok(PolyPath::new(vec![s, t], vec![SegmentKind::Tangent]));
    }

    let tri = triangulate_free_space(domain)?;
    let s_tri = tri.triangle_containing(s).ok_or(Error::PointInsideObstacle)?;
    let t_tri = tri.triangle_containing(t).ok_or(Error::PointInsideObstacle)?;
    let g3 = reduce_to_g3(&tri, s_tri, t_tri);
    let sketch = build_chain_sketch(&tri, &g3, &params);

    let family = ConeFamily::from_params(&params);
    let mut g = BoundaryGraph::new(domain, &tri);
    // Cone edges at chain-coreset vertices, clipped to tangent wedges; skip
    // reflex vertices, where no tangent wedge exists.
    for &pi in &sketch.coreset {
        let (oi, vi) = tri.ring_pos[pi].unwrap();
        let vs = domain.obstacles[oi].vertices();
        let n = vs.len();
        let (prev, v, next) = (vs[(vi + n - 1) % n], vs[vi], vs[(vi + 1) % n]);
        if orient2d(prev, v, next) <= 0 {
            continue;
        }
        let sectors: Vec<_> = clipped_admissible_cones(prev, v, next, &family)
            .into_iter()
            .map(|(_, sec)| sec)
            .collect();
        g.add_cone_edges(g.point_node[&pi], &sectors);
    }
    // Triangulation diagonals are straight free-space segments; they keep
    // the graph connected across obstacle clusters that no cone edge bridges.
    for (&(a, b), tris) in &tri.edge_map() {
        if tris.len() == 2 {
            g.add_edge(g.point_node[&a], g.point_node[&b], EdgeKind::Cone);
        }
    }
    // Corridor-path links between pseudo-apices.
    for link in &sketch.links {
        for w in link.polyline.windows(2) {
            let (u, v) = (g.point_node[&w[0]], g.point_node[&w[1]]);
            if u != v {
                let weight = g.nodes[u].point.dist(g.nodes[v].point);
                g.edges.push(SpannerEdge { u, v, weight, kind: EdgeKind::CorridorPath });
            }
        }
    }
    // Query points get the full cone fan.
    let full: Vec<_> = (0..family.count).map(|i| family.cone(i)).collect();
    let s_id = g.add_node(NodeKind::QueryPoint, s);
    g.add_cone_edges(s_id, &full);
    let t_id = g.add_node(NodeKind::QueryPoint, t);
    g.add_cone_edges(t_id, &full);
    if segment_visible(Segment::new(s, t), domain) {
        g.add_edge(s_id, t_id, EdgeKind::Cone);
    }

    let spanner = g.finish(family);
    let (dist, node_path) = spanner.dijkstra(s_id, t_id)?;
    if !dist.is_finite() {
        return Err(Error::Unreachable);
    }
    Ok(pipeline::node_path_to_polypath(&spanner, &node_path))
}
