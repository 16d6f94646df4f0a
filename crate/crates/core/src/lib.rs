//! Approximate Euclidean shortest paths amid polygonal obstacles.
//!
//! The library reduces a polygonal domain to a *sketch*: each obstacle
//! boundary is partitioned into bounded-turn patches, patch endpoints form a
//! coreset, and the coreset hull (or chain assembly, for non-convex input)
//! stands in for the obstacle. A cone-based spanner over the sketch answers
//! `(1+eps)`-approximate point-to-point queries; a planarized spanner plus
//! cone Voronoi point location answers `(2+eps)`-approximate two-point
//! distance queries after preprocessing.

pub mod corridors;
pub mod domain_io;
pub mod geom;
pub mod lift;
pub mod oracle;
pub mod path;
pub mod pipeline;
pub mod query;
pub mod sketch;
pub mod spanner;
pub mod svg;

pub use geom::{ConvexPolygon, Point, PolygonalDomain, Rect, Segment, SimplePolygon, Tolerance};
pub use path::{PolyPath, SegmentKind};

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("point lies inside the polygon")]
    PointInsidePolygon,
    #[error("point is not on the polygon boundary")]
    PointNotOnBoundary,
    #[error("epsilon must be positive, got {0}")]
    InvalidEpsilon(f64),
    #[error("obstacle {0} is not convex")]
    NonConvexObstacle(usize),
    #[error("point lies inside an obstacle")]
    PointInsideObstacle,
    #[error("node {0} not found in graph")]
    NodeNotFound(usize),
    #[error("input path intersects an obstacle interior")]
    InvalidInputPath,
    #[error("no obstacle-avoiding path exists between the query points")]
    Unreachable,
    #[error("planar subgraph stretch certification failed: sampled stretch {0}")]
    StretchCertificationFailed(f64),
    #[error("parse error: {0}")]
    ParseError(String),
    #[error("obstacles {0} and {1} overlap")]
    OverlappingObstacles(usize, usize),
    #[error("obstacle {0} is self-intersecting")]
    SelfIntersecting(usize),
    #[error("instance generation failed after bounded retries")]
    GenerationFailed,
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
