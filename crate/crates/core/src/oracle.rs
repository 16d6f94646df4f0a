//! Ground-truth exact shortest paths: visibility graph plus Dijkstra.
//!
//! Correctness over speed: the visibility graph is built naively with the
//! exact predicates, in parallel over vertex pairs. All stretch-factor tests
//! anchor against this module.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use rayon::prelude::*;

use crate::geom::{segment_visible, Point, PolygonalDomain, Segment};
use crate::path::{PolyPath, SegmentKind};
use crate::{Error, Result};

/// Visibility graph over the obstacle vertices of a domain.
pub struct VisibilityGraph {
    pub nodes: Vec<Point>,
    pub adj: Vec<Vec<(usize, f64)>>,
}

impl VisibilityGraph {
    /// Build the graph over all obstacle vertices (no query points yet).
    pub fn build(domain: &PolygonalDomain) -> Self {
        let nodes: Vec<Point> = domain
            .obstacles
            .iter()
            .flat_map(|o| o.vertices().iter().copied())
            .collect();
        let n = nodes.len();
        let edge_lists: Vec<Vec<(usize, f64)>> = (0..n)
            .into_par_iter()
            .map(|i| {
                let mut out = Vec::new();
                for j in 0..n {
                    if i == j {
                        continue;
                    }
                    let s = Segment::new(nodes[i], nodes[j]);
                    if segment_visible(s, domain) {
                        out.push((j, s.len()));
                    }
                }
                out
            })
            .collect();
        VisibilityGraph { nodes, adj: edge_lists }
    }

    /// Exact geodesic between two free-space points, adding them to the graph
    /// transiently.
    pub fn query(&self, domain: &PolygonalDomain, s: Point, t: Point) -> Result<(f64, PolyPath)> {
        if !domain.in_free_space(s) || !domain.in_free_space(t) {
            return Err(Error::PointInsideObstacle);
        }
        if s == t {
            return Ok((0.0, PolyPath::single(s)));
        }
        if segment_visible(Segment::new(s, t), domain) {
            return Ok((
                s.dist(t),
                PolyPath::new_uniform(vec![s, t], SegmentKind::Tangent),
            ));
        }
        let n = self.nodes.len();
        let si = n;
        let ti = n + 1;
        // Transient adjacency for s and t.
        let extra: Vec<Vec<(usize, f64)>> = [s, t]
            .par_iter()
            .map(|&p| {
                (0..n)
                    .filter_map(|j| {
                        let seg = Segment::new(p, self.nodes[j]);
                        segment_visible(seg, domain).then(|| (j, seg.len()))
                    })
                    .collect()
            })
            .collect();

        let neighbors = |u: usize| -> Vec<(usize, f64)> {
            if u == si {
                extra[0].clone()
            } else if u == ti {
                extra[1].clone()
            } else {
                let mut v = self.adj[u].clone();
                for (lists, idx) in [(&extra[0], si), (&extra[1], ti)] {
                    if let Some(&(_, w)) = lists.iter().find(|&&(j, _)| j == u) {
                        v.push((idx, w));
                    }
                }
                v
            }
        };

        let total = n + 2;
        let (dist, prev) = dijkstra_generic(total, si, neighbors);
        if !dist[ti].is_finite() {
            return Err(Error::Unreachable);
        }
        let mut waypoints = Vec::new();
        let mut cur = ti;
        loop {
            waypoints.push(if cur == si {
                s
            } else if cur == ti {
                t
            } else {
                self.nodes[cur]
            });
            match prev[cur] {
                Some(p) => cur = p,
                None => break,
            }
        }
        waypoints.reverse();
        Ok((dist[ti], PolyPath::new_uniform(waypoints, SegmentKind::Tangent)))
    }
}

/// Exact geodesic distance and a realizing polyline.
pub fn exact_shortest_path(
    domain: &PolygonalDomain,
    s: Point,
    t: Point,
) -> Result<(f64, PolyPath)> {
    VisibilityGraph::build(domain).query(domain, s, t)
}

#[derive(PartialEq)]
struct HeapItem {
    dist: f64,
    node: usize,
}

impl Eq for HeapItem {}

impl Ord for HeapItem {
    fn cmp(&self, other: &Self) -> Ordering {
        // Min-heap on distance.
        other
            .dist
            .partial_cmp(&self.dist)
            .unwrap_or(Ordering::Equal)
            .then_with(|| other.node.cmp(&self.node))
    }
}

impl PartialOrd for HeapItem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Dijkstra over an implicit graph given by a neighbor function.
pub fn dijkstra_generic(
    n: usize,
    source: usize,
    neighbors: impl Fn(usize) -> Vec<(usize, f64)>,
) -> (Vec<f64>, Vec<Option<usize>>) {
    let mut dist = vec![f64::INFINITY; n];
    let mut prev: Vec<Option<usize>> = vec![None; n];
    let mut done = vec![false; n];
    let mut heap = BinaryHeap::new();
    dist[source] = 0.0;
    heap.push(HeapItem { dist: 0.0, node: source });
    while let Some(HeapItem { dist: d, node: u }) = heap.pop() {
        if done[u] {
            continue;
        }
        done[u] = true;
        for (v, w) in neighbors(u) {
            let nd = d + w;
            if nd < dist[v] {
                dist[v] = nd;
                prev[v] = Some(u);
                heap.push(HeapItem { dist: nd, node: v });
            }
        }
    }
    (dist, prev)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{Rect, SimplePolygon};

    fn square_domain() -> PolygonalDomain {
        let sq = SimplePolygon::new(vec![
            Point::new(0.0, 0.0),
            Point::new(1.0, 0.0),
            Point::new(1.0, 1.0),
            Point::new(0.0, 1.0),
        ])
        .unwrap();
        PolygonalDomain::new(
            vec![sq],
            Rect::new(Point::new(-10.0, -10.0), Point::new(10.0, 10.0)),
        )
        .unwrap()
    }

    #[test]
    fn around_unit_square() {
        let dom = square_domain();
        let (len, path) =
            exact_shortest_path(&dom, Point::new(-1.0, 0.5), Point::new(2.0, 0.5)).unwrap();
        let expected = 1.25f64.sqrt() + 1.0 + 1.25f64.sqrt();
        assert!((len - expected).abs() < 1e-12, "got {len}, want {expected}");
        assert_eq!(path.waypoints.len(), 4);
    }

    #[test]
    fn visible_pair_is_straight() {
        let dom = square_domain();
        let (len, path) =
            exact_shortest_path(&dom, Point::new(-1.0, 2.0), Point::new(2.0, 2.0)).unwrap();
        assert_eq!(len, 3.0);
        assert_eq!(path.waypoints.len(), 2);
    }

    #[test]
    fn no_obstacles_straight() {
        let dom = PolygonalDomain::new(
            vec![],
            Rect::new(Point::new(-10.0, -10.0), Point::new(10.0, 10.0)),
        )
        .unwrap();
        let (len, _) =
            exact_shortest_path(&dom, Point::new(0.0, 0.0), Point::new(3.0, 4.0)).unwrap();
        assert_eq!(len, 5.0);
    }

    #[test]
    fn lower_bound_and_triangle_inequality() {
        let dom = square_domain();
        let s = Point::new(-1.0, 0.3);
        let t = Point::new(2.0, 0.7);
        let m = Point::new(0.5, -1.0);
        let g = VisibilityGraph::build(&dom);
        let (dst, _) = g.query(&dom, s, t).unwrap();
        let (dsm, _) = g.query(&dom, s, m).unwrap();
        let (dmt, _) = g.query(&dom, m, t).unwrap();
        assert!(dst >= s.dist(t) - 1e-12);
        assert!(dst <= dsm + dmt + 1e-9);
    }

    #[test]
    fn grid_convergence_bounds_from_above() {
        // An 8-connected grid path avoiding the obstacle is never shorter
        // than the oracle and approaches it as spacing shrinks.
        let dom = square_domain();
        let s = Point::new(-1.0, 0.5);
        let t = Point::new(2.0, 0.5);
        let (exact, _) = exact_shortest_path(&dom, s, t).unwrap();
        let mut last = f64::INFINITY;
        for spacing in [0.25f64, 0.1] {
            let len = grid_path_len(&dom, s, t, spacing);
            assert!(len >= exact - 1e-9, "grid {len} ≥ exact {exact}");
            assert!(len <= last + 1e-9);
            last = len;
        }
        assert!(last <= exact * 1.12);
    }

    fn grid_path_len(dom: &PolygonalDomain, s: Point, t: Point, h: f64) -> f64 {
        // Small 8-connected grid Dijkstra, snapping s and t to grid nodes.
        let x0 = -2.0;
        let y0 = -2.0;
        let nx = ((4.0) / h) as usize + 1;
        let ny = nx;
        let idx = |ix: usize, iy: usize| iy * nx + ix;
        let pt = |ix: usize, iy: usize| Point::new(x0 + ix as f64 * h, y0 + iy as f64 * h);
        let free: Vec<bool> = (0..nx * ny)
            .map(|k| dom.in_free_space(pt(k % nx, k / nx)))
            .collect();
        let neighbors = |u: usize| -> Vec<(usize, f64)> {
            let (ix, iy) = (u % nx, u / nx);
            let mut out = Vec::new();
            for dx in -1i64..=1 {
                for dy in -1i64..=1 {
                    if dx == 0 && dy == 0 {
                        continue;
                    }
                    let jx = ix as i64 + dx;
                    let jy = iy as i64 + dy;
                    if jx < 0 || jy < 0 || jx >= nx as i64 || jy >= ny as i64 {
                        continue;
                    }
                    let v = idx(jx as usize, jy as usize);
                    if free[v]
                        && segment_visible(
                            Segment::new(pt(ix, iy), pt(jx as usize, jy as usize)),
                            dom,
                        )
                    {
                        out.push((v, pt(ix, iy).dist(pt(jx as usize, jy as usize))));
                    }
                }
            }
            out
        };
        let snap = |p: Point| {
            idx(
                ((p.x - x0) / h).round() as usize,
                ((p.y - y0) / h).round() as usize,
            )
        };
        let (dist, _) = dijkstra_generic(nx * ny, snap(s), neighbors);
        dist[snap(t)] + 0.0
    }
}
