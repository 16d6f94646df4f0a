//! Two-point (2+ε)-approximate distance queries amid convex obstacles:
//! planarized spanner, pluggable distance oracle, per-orientation cone
//! point location, and per-query assembly of the small bipartite graph.

use serde::{Deserialize, Serialize};

use crate::geom::{
    segment_visible, segments_properly_cross, Point, PointLocation, PolygonalDomain, Segment,
};
use crate::oracle::dijkstra_generic;
use crate::sketch::{build_sketch, make_params, EpsilonParams, ParamMode, Sketch};
use crate::spanner::{build_spanner, ConeVoronoi, EdgeKind, Spanner, SpannerEdge};
use crate::{Error, Result};

pub const QUERY_FORMAT_VERSION: u32 = 1;

/// Planar subgraph of a spanner with its measured stretch certificate.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PlanarSpanner {
    pub edges: Vec<SpannerEdge>,
    /// Max sampled ratio dist_planar / dist_full.
    pub certificate: f64,
}

/// Keep edges in increasing weight order. A candidate that properly crosses
/// a kept edge is replaced by the detour through the kept edge's endpoint
/// nearer the crossing point; with the kept edge no heavier, the detour is
/// at most twice the candidate, which is what bounds the certificate by 2.
/// Detour segments must be visible in `domain` so their Euclidean weights
/// stay genuine free-space distances.
pub fn planarize(g: &Spanner, domain: &PolygonalDomain) -> Result<PlanarSpanner> {
    use std::cmp::Reverse;
    use std::collections::{BinaryHeap, HashSet};

    struct Cand(f64, SpannerEdge, u32);
    impl PartialEq for Cand {
        fn eq(&self, other: &Self) -> bool {
            self.0 == other.0
        }
    }
    impl Eq for Cand {}
    impl PartialOrd for Cand {
        fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
            Some(self.cmp(other))
        }
    }
    impl Ord for Cand {
        fn cmp(&self, other: &Self) -> std::cmp::Ordering {
            self.0.partial_cmp(&other.0).unwrap()
        }
    }

    let mut heap: BinaryHeap<Reverse<Cand>> = BinaryHeap::new();
    for e in &g.edges {
        heap.push(Reverse(Cand(e.weight, *e, 0)));
    }
    let mut kept: Vec<SpannerEdge> = Vec::new();
    let mut seen: HashSet<(usize, usize)> = HashSet::new();
    let mut budget = 64 * g.edges.len().max(1);
    while let Some(Reverse(Cand(_, e, depth))) = heap.pop() {
        if budget == 0 {
            break;
        }
        budget -= 1;
        let se = Segment::new(g.nodes[e.u].point, g.nodes[e.v].point);
        let crossing = kept.iter().find(|k| {
            segments_properly_cross(se, Segment::new(g.nodes[k.u].point, g.nodes[k.v].point))
        });
        let Some(k) = crossing else {
            if seen.insert((e.u.min(e.v), e.u.max(e.v))) {
                kept.push(e);
            }
            continue;
        };
        if depth >= 16 {
            continue;
        }
        // Route around the blocking edge through its nearer endpoint.
        let sk = Segment::new(g.nodes[k.u].point, g.nodes[k.v].point);
        let t = crate::geom::segment_segment_params(se, sk)[0];
        let c = se.at(t);
        let w = if g.nodes[k.u].point.dist(c) <= g.nodes[k.v].point.dist(c) { k.u } else { k.v };
        for (u, v) in [(e.u, w), (w, e.v)] {
            if u == v || seen.contains(&(u.min(v), u.max(v))) {
                continue;
            }
            let seg = Segment::new(g.nodes[u].point, g.nodes[v].point);
            if segment_visible(seg, domain) {
                let weight = seg.a.dist(seg.b);
                heap.push(Reverse(Cand(
                    weight,
                    SpannerEdge { u, v, weight, kind: EdgeKind::Cone },
                    depth + 1,
                )));
            }
        }
    }
    let edges = kept;

    // Certification sample.
    let n = g.nodes.len();
    let full_adj = g.adjacency();
    let mut pl_adj = vec![Vec::new(); n];
    for e in &edges {
        pl_adj[e.u].push((e.v, e.weight));
        pl_adj[e.v].push((e.u, e.weight));
    }
    let mut worst: f64 = 1.0;
    let sources: Vec<usize> = (0..n).step_by((n / 10).max(1)).collect();
    for &s in &sources {
        let (df, _) = dijkstra_generic(n, s, |u| full_adj[u].clone());
        let (dp, _) = dijkstra_generic(n, s, |u| pl_adj[u].clone());
        for v in 0..n {
            if df[v].is_finite() && df[v] > 1e-12 {
                worst = worst.max(dp[v] / df[v]);
            }
        }
    }
    if worst > 2.0 + 1e-9 {
        return Err(Error::StretchCertificationFailed(worst));
    }
    Ok(PlanarSpanner { edges, certificate: worst })
}

/// Distance oracle over the planar subgraph. The default runs exact Dijkstra
/// per source, preserving the lower-bound side of the guarantee.
pub trait DistanceOracle {
    /// Distances from `u` to every node of the planar subgraph.
    fn distances_from(&self, u: usize) -> Vec<f64>;
    fn query(&self, u: usize, v: usize) -> f64 {
        self.distances_from(u)[v]
    }
}

pub struct ExactPlanarOracle {
    adj: Vec<Vec<(usize, f64)>>,
}

impl ExactPlanarOracle {
    pub fn new(node_count: usize, planar: &PlanarSpanner) -> Self {
        let mut adj = vec![Vec::new(); node_count];
        for e in &planar.edges {
            adj[e.u].push((e.v, e.weight));
            adj[e.v].push((e.u, e.weight));
        }
        ExactPlanarOracle { adj }
    }
}

impl DistanceOracle for ExactPlanarOracle {
    fn distances_from(&self, u: usize) -> Vec<f64> {
        dijkstra_generic(self.adj.len(), u, |x| self.adj[x].clone()).0
    }
}

/// Preprocessed structure for (2+ε)-approximate two-point distance queries.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct QueryStructure {
    pub version: u32,
    pub params: EpsilonParams,
    pub domain: PolygonalDomain,
    pub sketch: Sketch,
    pub spanner: Spanner,
    pub planar: PlanarSpanner,
    pub cvds: Vec<ConeVoronoi>,
}

/// One neighbor of a query point: the nearest boundary point in one cone and
/// its adjacent graph nodes with boundary-walk weights.
#[derive(Debug, Clone)]
pub struct Neighbor {
    pub cone: usize,
    pub q: Point,
    pub obstacle: usize,
    pub arc: f64,
    pub dist_pq: f64,
    /// (graph node, boundary distance from q to the node).
    pub anchors: Vec<(usize, f64)>,
}

/// Build the full query structure for a convex domain.
pub fn preprocess(domain: &PolygonalDomain, eps: f64) -> Result<QueryStructure> {
    for (i, o) in domain.obstacles.iter().enumerate() {
        if !o.is_convex() {
            return Err(Error::NonConvexObstacle(i));
        }
    }
    let params = make_params(eps, ParamMode::TwoPointQuery)?;
    let sketch = build_sketch(domain, &params)?;
    let omega = sketch.as_domain(domain.bounding_rect);
    let spanner = build_spanner(&omega, &params)?;
    let planar = planarize(&spanner, &omega)?;
    let cvds = (0..spanner.family.count)
        .map(|i| ConeVoronoi { family_index: i, family: spanner.family })
        .collect();
    Ok(QueryStructure {
        version: QUERY_FORMAT_VERSION,
        params,
        domain: domain.clone(),
        sketch,
        spanner,
        planar,
        cvds,
    })
}

impl QueryStructure {
    pub fn save_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }

    pub fn load_json(text: &str) -> Result<Self> {
        let qs: QueryStructure =
            serde_json::from_str(text).map_err(|e| Error::ParseError(e.to_string()))?;
        if qs.version != QUERY_FORMAT_VERSION {
            return Err(Error::ParseError(format!(
                "unsupported query structure version {}",
                qs.version
            )));
        }
        Ok(qs)
    }

    fn omega(&self) -> PolygonalDomain {
        self.sketch.as_domain(self.domain.bounding_rect)
    }

    /// Graph nodes on each sketch obstacle, sorted by boundary arc.
    fn boundary_nodes(&self) -> Vec<Vec<(f64, usize)>> {
        let mut by_obstacle = vec![Vec::new(); self.sketch.corepolygons.len()];
        for (id, n) in self.spanner.nodes.iter().enumerate() {
            if let Some((oi, arc)) = n.host {
                by_obstacle[oi].push((arc, id));
            }
        }
        for list in &mut by_obstacle {
            list.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        }
        by_obstacle
    }

    /// Per-cone nearest boundary points around `p` with their anchor nodes.
    pub fn locate_neighbors(&self, p: Point) -> Result<Vec<Neighbor>> {
        let omega = self.omega();
        if !omega.in_free_space(p) {
            return Err(Error::PointInsideObstacle);
        }
        let own = omega
            .obstacles
            .iter()
            .position(|o| o.locate(p) == PointLocation::Boundary);
        let by_obstacle = self.boundary_nodes();
        let perims: Vec<f64> = omega.obstacles.iter().map(|o| o.perimeter()).collect();
        let mut out = Vec::new();
        for cvd in &self.cvds {
            let Some(cp) = cvd.locate(p, &omega, own) else {
                continue;
            };
            let list = &by_obstacle[cp.obstacle];
            let per = perims[cp.obstacle];
            let mut anchors = Vec::new();
            if let Some(&(_, id)) = list.iter().find(|&&(arc, _)| {
                let d = (arc - cp.arc).abs();
                d < 1e-9 || (per - d).abs() < 1e-9
            }) {
                anchors.push((id, 0.0));
            } else if !list.is_empty() {
                let idx = list.partition_point(|&(arc, _)| arc < cp.arc);
                let (arc_next, next) = list[idx % list.len()];
                let (arc_prev, prev) = list[(idx + list.len() - 1) % list.len()];
                let fwd = (arc_next - cp.arc).rem_euclid(per);
                let back = (cp.arc - arc_prev).rem_euclid(per);
                anchors.push((prev, back));
                anchors.push((next, fwd));
            }
            out.push(Neighbor {
                cone: cvd.family_index,
                q: cp.point,
                obstacle: cp.obstacle,
                arc: cp.arc,
                dist_pq: cp.dist,
                anchors,
            });
        }
        Ok(out)
    }

    /// (2+ε)-approximate distance between two free-space points, with a
    /// witness polyline through the sketch.
    pub fn query_distance(&self, s: Point, t: Point) -> Result<(f64, Vec<Point>)> {
        self.query_distance_with(&ExactPlanarOracle::new(self.spanner.nodes.len(), &self.planar), s, t)
    }

    pub fn query_distance_with(
        &self,
        oracle: &impl DistanceOracle,
        s: Point,
        t: Point,
    ) -> Result<(f64, Vec<Point>)> {
        if !self.domain.in_free_space(s) || !self.domain.in_free_space(t) {
            return Err(Error::PointInsideObstacle);
        }
        if s.dist(t) < 1e-15 {
            return Ok((0.0, vec![s]));
        }
        if segment_visible(Segment::new(s, t), &self.domain) {
            return Ok((s.dist(t), vec![s, t]));
        }
        let vs = self.locate_neighbors(s)?;
        let vt = self.locate_neighbors(t)?;
        if vs.is_empty() || vt.is_empty() {
            return Err(Error::Unreachable);
        }
        let perims: Vec<f64> = self
            .sketch
            .corepolygons
            .iter()
            .map(|c| c.polygon.perimeter())
            .collect();
        // One single-source run per distinct anchor of s.
        let mut best = f64::INFINITY;
        let mut witness: Vec<Point> = Vec::new();
        for a in &vs {
            for &(pa, wa) in &a.anchors {
                let dist = oracle.distances_from(pa);
                for b in &vt {
                    for &(pb, wb) in &b.anchors {
                        let total = a.dist_pq + wa + dist[pb] + wb + b.dist_pq;
                        if total < best {
                            best = total;
                            witness = vec![
                                s,
                                a.q,
                                self.spanner.nodes[pa].point,
                                self.spanner.nodes[pb].point,
                                b.q,
                                t,
                            ];
                        }
                    }
                }
            }
        }
        // Same-obstacle shortcut: both hit points on one sketch obstacle.
        for a in &vs {
            for b in &vt {
                if a.obstacle == b.obstacle {
                    let per = perims[a.obstacle];
                    let d = (a.arc - b.arc).abs();
                    let walk = d.min(per - d);
                    let total = a.dist_pq + walk + b.dist_pq;
                    if total < best {
                        best = total;
                        witness = vec![s, a.q, b.q, t];
                    }
                }
            }
        }
        if !best.is_finite() {
            return Err(Error::Unreachable);
        }
        // The sketch underestimates original-domain distances by at most the
        // realized patch factor; compensate to restore the lower bound.
        Ok((best * self.sketch.gamma, witness))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain_io::{generate_domain, random_free_point, ObstacleShape};
    use crate::geom::{Rect, SimplePolygon};
    use crate::oracle::VisibilityGraph;
    use crate::spanner::{EdgeKind, NodeKind, SpannerNode};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn node(x: f64, y: f64) -> SpannerNode {
        SpannerNode { kind: NodeKind::CoresetVertex, point: Point::new(x, y), host: None }
    }

    fn edge(u: usize, v: usize, p: &[SpannerNode]) -> SpannerEdge {
        SpannerEdge { u, v, weight: p[u].point.dist(p[v].point), kind: EdgeKind::Cone }
    }

    fn free_plane() -> PolygonalDomain {
        PolygonalDomain::new(
            vec![],
            crate::geom::Rect::new(Point::new(-10.0, -10.0), Point::new(10.0, 10.0)),
        )
        .unwrap()
    }

    #[test]
    fn planarize_keeps_planar_graph() {
        let nodes = vec![node(0.0, 0.0), node(1.0, 0.0), node(1.0, 1.0)];
        let edges = vec![edge(0, 1, &nodes), edge(1, 2, &nodes), edge(0, 2, &nodes)];
        let g = Spanner {
            family: crate::spanner::ConeFamily { count: 4, angle: std::f64::consts::FRAC_PI_2 },
            nodes,
            edges,
        };
        let pl = planarize(&g, &free_plane()).unwrap();
        assert_eq!(pl.edges.len(), 3);
        assert!((pl.certificate - 1.0).abs() < 1e-12);
    }

    #[test]
    fn planarize_drops_heavier_crossing_edge() {
        // K4 on a square: the two diagonals cross; the second one in weight
        // order is dropped.
        let nodes = vec![node(0.0, 0.0), node(2.0, 0.0), node(2.0, 1.0), node(0.0, 1.0)];
        let mut edges = vec![
            edge(0, 1, &nodes),
            edge(1, 2, &nodes),
            edge(2, 3, &nodes),
            edge(3, 0, &nodes),
            edge(0, 2, &nodes),
        ];
        edges.push(SpannerEdge {
            u: 1,
            v: 3,
            weight: nodes[1].point.dist(nodes[3].point) + 0.01,
            kind: EdgeKind::Cone,
        });
        let g = Spanner {
            family: crate::spanner::ConeFamily { count: 4, angle: std::f64::consts::FRAC_PI_2 },
            nodes,
            edges,
        };
        let pl = planarize(&g, &free_plane()).unwrap();
        assert_eq!(pl.edges.len(), 5);
        assert!(!pl.edges.iter().any(|e| (e.u, e.v) == (1, 3)));
    }

    #[test]
    fn empty_domain_queries_are_euclidean() {
        let dom = PolygonalDomain::new(
            vec![],
            Rect::new(Point::new(-10.0, -10.0), Point::new(10.0, 10.0)),
        )
        .unwrap();
        let qs = preprocess(&dom, 0.662).unwrap();
        let (d, _) = qs.query_distance(Point::new(-3.0, 0.0), Point::new(3.0, 0.0)).unwrap();
        assert_eq!(d, 6.0);
    }

    #[test]
    fn opposite_sides_of_square() {
        let dom = PolygonalDomain::new(
            vec![SimplePolygon::new(vec![
                Point::new(0.0, 0.0),
                Point::new(1.0, 0.0),
                Point::new(1.0, 1.0),
                Point::new(0.0, 1.0),
            ])
            .unwrap()],
            Rect::new(Point::new(-10.0, -10.0), Point::new(10.0, 10.0)),
        )
        .unwrap();
        let qs = preprocess(&dom, 0.662).unwrap();
        let s = Point::new(-1.0, 0.5);
        let t = Point::new(2.0, 0.5);
        let (exact, _) = crate::oracle::exact_shortest_path(&dom, s, t).unwrap();
        let (d, _) = qs.query_distance(s, t).unwrap();
        assert!(d >= exact - 1e-9, "answer {d} below exact {exact}");
        assert!(d <= 2.42 * exact + 1e-9, "answer {d} above bound for exact {exact}");
        // Symmetry.
        let (d2, _) = qs.query_distance(t, s).unwrap();
        assert!((d - d2).abs() < 1e-9);
    }

    #[test]
    fn random_domains_sandwich() {
        for seed in 0..2u64 {
            let dom = generate_domain(seed, 5, 20, ObstacleShape::Convex).unwrap();
            let qs = preprocess(&dom, 0.662).unwrap();
            assert!(qs.planar.certificate <= 2.0 + 1e-9);
            let vg = VisibilityGraph::build(&dom);
            let mut rng = ChaCha8Rng::seed_from_u64(seed + 500);
            for _ in 0..10 {
                let s = random_free_point(&dom, &mut rng);
                let t = random_free_point(&dom, &mut rng);
                let (exact, _) = vg.query(&dom, s, t).unwrap();
                let (d, _) = qs.query_distance(s, t).unwrap();
                if segment_visible(Segment::new(s, t), &dom) {
                    assert!((d - s.dist(t)).abs() < 1e-12);
                } else {
                    assert!(d >= exact - 1e-9, "seed {seed}: {d} < exact {exact}");
                    assert!(d <= 2.42 * exact + 1e-9, "seed {seed}: {d} vs exact {exact}");
                }
            }
        }
    }

    #[test]
    fn save_load_roundtrip_same_answers() {
        let dom = generate_domain(11, 4, 16, ObstacleShape::Convex).unwrap();
        let qs = preprocess(&dom, 0.662).unwrap();
        let text = qs.save_json();
        let back = QueryStructure::load_json(&text).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for _ in 0..5 {
            let s = random_free_point(&dom, &mut rng);
            let t = random_free_point(&dom, &mut rng);
            let (a, _) = qs.query_distance(s, t).unwrap();
            let (b, _) = back.query_distance(s, t).unwrap();
            assert_eq!(a, b);
        }
    }
}
