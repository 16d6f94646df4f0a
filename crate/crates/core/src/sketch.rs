//! Obstacle sketches: bounded-turn boundary patches, coresets, and
//! corepolygons.
//!
//! Each convex obstacle boundary is partitioned greedily into contiguous
//! patches whose subtended angle (sum of exterior turns at vertices interior
//! to the patch) stays below `sqrt(eps')`. Patch endpoints form the coreset;
//! the coreset hull is the corepolygon that stands in for the obstacle.

use serde::{Deserialize, Serialize};

use crate::geom::{convex_hull, normalize_angle, ConvexPolygon, PolygonalDomain};
use crate::{Error, Result};

/// Which approximation bound the parameters target.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ParamMode {
    /// `(1+eps)` single-shot paths: `eps' = sqrt(1+eps) - 1`.
    SingleShot,
    /// `(2+eps)` two-point queries: `eps'' = ((2+eps)/2)^(1/3) - 1`.
    TwoPointQuery,
}

/// Derived approximation parameters shared across the pipeline.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct EpsilonParams {
    pub eps: f64,
    pub eps_prime: f64,
    pub patch_angle: f64,
    pub cone_angle: f64,
    pub cone_count: usize,
    pub mode: ParamMode,
}

/// Derive the working parameters from the user tolerance.
pub fn make_params(eps: f64, mode: ParamMode) -> Result<EpsilonParams> {
    if !(eps > 0.0) {
        return Err(Error::InvalidEpsilon(eps));
    }
    let eps_prime = match mode {
        ParamMode::SingleShot => (1.0 + eps).sqrt() - 1.0,
        ParamMode::TwoPointQuery => ((2.0 + eps) / 2.0).cbrt() - 1.0,
    };
    let patch_angle = eps_prime.sqrt();
    // Cone spanners with apex angle psi have stretch 1/(cos psi - sin psi);
    // solving cos psi - sin psi >= 1/(1 + eps') gives the largest angle that
    // still guarantees a (1 + eps')-spanner. (A small-angle expansion would
    // suggest sqrt(eps'), but that violates the exact condition.)
    let cone_angle =
        (1.0 / (std::f64::consts::SQRT_2 * (1.0 + eps_prime))).acos() - std::f64::consts::FRAC_PI_4;
    let cone_count = (std::f64::consts::TAU / cone_angle).ceil() as usize;
    Ok(EpsilonParams {
        eps,
        eps_prime,
        patch_angle,
        cone_angle,
        cone_count,
        mode,
    })
}

/// A contiguous CCW run of boundary edges with bounded direction change.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Patch {
    pub obstacle_id: usize,
    pub start_edge: usize,
    pub edge_count: usize,
    pub subtended_angle: f64,
}

impl Patch {
    /// Edge indices covered by the patch, in CCW order.
    pub fn edge_indices(&self, n: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.edge_count).map(move |k| (self.start_edge + k) % n)
    }

    /// First vertex (start of first edge) and last vertex (end of last edge).
    pub fn endpoint_vertices(&self, n: usize) -> (usize, usize) {
        (self.start_edge, (self.start_edge + self.edge_count) % n)
    }
}

/// Coreset: patch endpoint vertices of one obstacle, CCW-sorted indices.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Coreset {
    pub obstacle_id: usize,
    pub vertex_indices: Vec<usize>,
}

/// The convex stand-in for one obstacle: the hull of its coreset.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Corepolygon {
    pub obstacle_id: usize,
    pub polygon: ConvexPolygon,
    /// For each corepolygon vertex, the index of the same point in the
    /// original obstacle's vertex list.
    pub original_indices: Vec<usize>,
}

/// The reduced domain: one corepolygon per obstacle.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Sketch {
    pub params: EpsilonParams,
    pub corepolygons: Vec<Corepolygon>,
    pub coresets: Vec<Coreset>,
    /// Realized worst patch inflation factor `theta / sin(theta)`; multiplies
    /// sketch distances into valid upper bounds on domain distances.
    pub gamma: f64,
}

/// Exterior turn angle at the vertex between two consecutive CCW edges of a
/// convex polygon, in `[0, pi)`.
fn turn_angle(poly: &ConvexPolygon, vertex: usize) -> f64 {
    let n = poly.len();
    let prev = poly.vertices()[(vertex + n - 1) % n];
    let cur = poly.vertices()[vertex];
    let next = poly.vertices()[(vertex + 1) % n];
    let a1 = prev.angle_to(cur);
    let a2 = cur.angle_to(next);
    let mut t = normalize_angle(a2 - a1);
    if t >= std::f64::consts::PI {
        // Convexity guarantees a left turn; anything at or past pi is noise.
        t -= std::f64::consts::TAU;
    }
    t.max(0.0)
}

/// Greedy CCW partition of the boundary into patches subtending at most
/// `params.patch_angle` each (single-edge patches are always admitted).
pub fn partition_patches(
    poly: &ConvexPolygon,
    obstacle_id: usize,
    params: &EpsilonParams,
) -> Vec<Patch> {
    let n = poly.len();
    let mut patches = Vec::new();
    let mut start = 0usize;
    let mut acc = 0.0f64;
    let mut count = 1usize;
    for e in 1..n {
        // Turn at the vertex between edge e-1 and edge e is at vertex e.
        let t = turn_angle(poly, e);
        if acc + t <= params.patch_angle {
            acc += t;
            count += 1;
        } else {
            patches.push(Patch {
                obstacle_id,
                start_edge: start,
                edge_count: count,
                subtended_angle: acc,
            });
            start = e;
            acc = 0.0;
            count = 1;
        }
    }
    patches.push(Patch {
        obstacle_id,
        start_edge: start,
        edge_count: count,
        subtended_angle: acc,
    });
    patches
}

/// Union of the first and last vertex of each patch, deduplicated and
/// CCW-sorted.
pub fn coreset_of(poly: &ConvexPolygon, patches: &[Patch]) -> Coreset {
    let n = poly.len();
    let obstacle_id = patches.first().map(|p| p.obstacle_id).unwrap_or(0);
    let mut idx: Vec<usize> = patches
        .iter()
        .flat_map(|p| {
            let (a, b) = p.endpoint_vertices(n);
            [a, b]
        })
        .collect();
    idx.sort_unstable();
    idx.dedup();
    Coreset { obstacle_id, vertex_indices: idx }
}

/// Build the sketch of an all-convex domain.
pub fn build_sketch(domain: &PolygonalDomain, params: &EpsilonParams) -> Result<Sketch> {
    let mut corepolygons = Vec::with_capacity(domain.obstacles.len());
    let mut coresets = Vec::with_capacity(domain.obstacles.len());
    let mut gamma = 1.0f64;
    for (id, obstacle) in domain.obstacles.iter().enumerate() {
        if !obstacle.is_convex() {
            return Err(Error::NonConvexObstacle(id));
        }
        let poly = ConvexPolygon::new(obstacle.vertices().to_vec())?;
        let patches = partition_patches(&poly, id, params);
        let mut coreset = coreset_of(&poly, &patches);
        // Tiny obstacles keep every vertex: the coreset can never beat the
        // original.
        if poly.len() < 2 * patches.len() {
            coreset.vertex_indices = (0..poly.len()).collect();
        }
        for p in &patches {
            let theta = p.subtended_angle;
            if theta > 0.0 {
                gamma = gamma.max(theta / theta.sin());
            }
        }
        let pts: Vec<_> = coreset
            .vertex_indices
            .iter()
            .map(|&i| poly.vertices()[i])
            .collect();
        let hull = convex_hull(&pts)?;
        let original_indices = hull
            .vertices()
            .iter()
            .map(|v| {
                poly.vertices()
                    .iter()
                    .position(|w| w == v)
                    .expect("corepolygon vertex is an obstacle vertex")
            })
            .collect();
        corepolygons.push(Corepolygon { obstacle_id: id, polygon: hull, original_indices });
        coresets.push(coreset);
    }
    Ok(Sketch { params: *params, corepolygons, coresets, gamma })
}

impl Sketch {
    /// The sketch as a polygonal domain (for oracle runs on `Omega`).
    pub fn as_domain(&self, rect: crate::geom::Rect) -> PolygonalDomain {
        PolygonalDomain {
            obstacles: self.corepolygons.iter().map(|c| c.polygon.to_simple()).collect(),
            bounding_rect: rect,
        }
    }

    pub fn total_coreset_size(&self) -> usize {
        self.coresets.iter().map(|c| c.vertex_indices.len()).sum()
    }
}
