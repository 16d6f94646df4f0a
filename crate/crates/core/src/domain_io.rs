//! Domain file format (JSON), validation, and reproducible instance
//! generation.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::geom::{Point, PolygonalDomain, Rect, SimplePolygon};
use crate::{Error, Result};

pub const DOMAIN_FORMAT_VERSION: u32 = 1;

/// On-disk domain: bounding rectangle, obstacles as coordinate rings, and
/// optional named points (e.g. "s", "t").
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct DomainFile {
    pub version: u32,
    pub rect: [[f64; 2]; 2],
    pub obstacles: Vec<Vec<[f64; 2]>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub points: BTreeMap<String, [f64; 2]>,
}

impl DomainFile {
    pub fn from_domain(domain: &PolygonalDomain) -> Self {
        DomainFile {
            version: DOMAIN_FORMAT_VERSION,
            rect: [
                [domain.bounding_rect.min.x, domain.bounding_rect.min.y],
                [domain.bounding_rect.max.x, domain.bounding_rect.max.y],
            ],
            obstacles: domain
                .obstacles
                .iter()
                .map(|o| o.vertices().iter().map(|p| [p.x, p.y]).collect())
                .collect(),
            points: BTreeMap::new(),
        }
    }

    pub fn to_domain(&self) -> Result<PolygonalDomain> {
        if self.version != DOMAIN_FORMAT_VERSION {
            return Err(Error::ParseError(format!(
                "unsupported domain format version {}",
                self.version
            )));
        }
        let mut obstacles = Vec::with_capacity(self.obstacles.len());
        for (i, ring) in self.obstacles.iter().enumerate() {
            let pts: Vec<Point> = ring.iter().map(|&[x, y]| Point::new(x, y)).collect();
            let poly = SimplePolygon::new(pts).map_err(|_| Error::SelfIntersecting(i))?;
            obstacles.push(poly);
        }
        let rect = Rect::new(
            Point::new(self.rect[0][0], self.rect[0][1]),
            Point::new(self.rect[1][0], self.rect[1][1]),
        );
        PolygonalDomain::new(obstacles, rect)
    }

    pub fn point(&self, name: &str) -> Option<Point> {
        self.points.get(name).map(|&[x, y]| Point::new(x, y))
    }
}

/// Parse and validate a JSON domain file.
pub fn parse_domain(text: &str) -> Result<PolygonalDomain> {
    let file: DomainFile =
        serde_json::from_str(text).map_err(|e| Error::ParseError(e.to_string()))?;
    file.to_domain()
}

/// Parse the full file (including named points).
pub fn parse_domain_file(text: &str) -> Result<DomainFile> {
    serde_json::from_str(text).map_err(|e| Error::ParseError(e.to_string()))
}

/// Serialize a domain to the JSON container (full double precision).
pub fn emit_domain(domain: &PolygonalDomain) -> String {
    serde_json::to_string_pretty(&DomainFile::from_domain(domain)).expect("serializable")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ObstacleShape {
    Convex,
    Simple,
}

/// Reproducible random instance: `h` disjoint obstacles with about
/// `vertices_per_obstacle` vertices each, laid out on a jittered grid.
pub fn generate_instance(
    seed: u64,
    h: usize,
    vertices_per_obstacle: usize,
    shape: ObstacleShape,
) -> Result<DomainFile> {
    let domain = generate_domain(seed, h, vertices_per_obstacle, shape)?;
    Ok(DomainFile::from_domain(&domain))
}

/// Same as [`generate_instance`] but returning the validated domain.
pub fn generate_domain(
    seed: u64,
    h: usize,
    vertices_per_obstacle: usize,
    shape: ObstacleShape,
) -> Result<PolygonalDomain> {
    let m = vertices_per_obstacle.max(3);
    let cols = (h as f64).sqrt().ceil() as usize;
    let cell = 10.0;
    let span = cols.max(1) as f64 * cell;
    let rect = Rect::new(Point::new(-cell, -cell), Point::new(span + cell, span + cell));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _attempt in 0..16 {
        let mut obstacles = Vec::with_capacity(h);
        for i in 0..h {
            let cx = (i % cols) as f64 * cell + cell / 2.0 + rng.gen_range(-1.0..1.0);
            let cy = (i / cols) as f64 * cell + cell / 2.0 + rng.gen_range(-1.0..1.0);
            let poly = match shape {
                ObstacleShape::Convex => random_convex(&mut rng, Point::new(cx, cy), 3.5, m),
                ObstacleShape::Simple => random_star(&mut rng, Point::new(cx, cy), 3.5, m),
            };
            match poly {
                Some(p) => obstacles.push(p),
                None => break,
            }
        }
        if obstacles.len() == h {
            if let Ok(domain) = PolygonalDomain::new(obstacles, rect) {
                return Ok(domain);
            }
        }
    }
    Err(Error::GenerationFailed)
}

fn sorted_angles(rng: &mut ChaCha8Rng, m: usize) -> Vec<f64> {
    let mut angles: Vec<f64> = (0..m)
        .map(|j| {
            let base = j as f64 / m as f64 * std::f64::consts::TAU;
            base + rng.gen_range(0.0..0.8 / m as f64 * std::f64::consts::TAU)
        })
        .collect();
    angles.sort_by(|a, b| a.partial_cmp(b).unwrap());
    angles
}

/// Points on a jittered rotated ellipse; strictly convex by construction.
fn random_convex(rng: &mut ChaCha8Rng, c: Point, rmax: f64, m: usize) -> Option<SimplePolygon> {
    let a = rng.gen_range(0.5..1.0) * rmax;
    let b = rng.gen_range(0.5..1.0) * rmax;
    let rot = rng.gen_range(0.0..std::f64::consts::TAU);
    let pts: Vec<Point> = sorted_angles(rng, m)
        .iter()
        .map(|&t| {
            let (x, y) = (a * t.cos(), b * t.sin());
            Point::new(
                c.x + x * rot.cos() - y * rot.sin(),
                c.y + x * rot.sin() + y * rot.cos(),
            )
        })
        .collect();
    crate::geom::convex_hull(&pts).ok().map(|h| h.to_simple())
}

/// Star-shaped polygon: strictly increasing angles with random radii.
fn random_star(rng: &mut ChaCha8Rng, c: Point, rmax: f64, m: usize) -> Option<SimplePolygon> {
    let pts: Vec<Point> = sorted_angles(rng, m)
        .iter()
        .map(|&t| {
            let r = rng.gen_range(0.35..1.0) * rmax;
            Point::new(c.x + r * t.cos(), c.y + r * t.sin())
        })
        .collect();
    SimplePolygon::new(pts).ok()
}

/// Random point in the free space of the domain (rejection sampling).
pub fn random_free_point(domain: &PolygonalDomain, rng: &mut ChaCha8Rng) -> Point {
    let r = &domain.bounding_rect;
    loop {
        let p = Point::new(
            rng.gen_range(r.min.x..r.max.x),
            rng.gen_range(r.min.y..r.max.y),
        );
        if domain.in_free_space(p) {
            return p;
        }
    }
}
