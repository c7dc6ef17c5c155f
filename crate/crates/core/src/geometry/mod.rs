//! Planar primitives: points, directions, line cuts, slabs and the two body
//! representations (convex polygons and arc-segment chains).
//!
//! Every query here is a pure function of immutable values. Tolerances are
//! relative to the size of the body being examined, never absolute.

mod arc;
mod body;
mod polygon;
pub(crate) mod skeleton;

use std::f64::consts::TAU;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use arc::{ArcSegmentBody, Feature, RoundedOrigin};
pub use body::{Body, Magnitude};
pub use polygon::{validate_polygon, ConvexPolygon, Diameter, Inradius, Width};

/// Relative tolerance (times the bounding-box diagonal) used to merge
/// duplicate vertices and to drop collinear ones.
pub const EPS_VERTEX: f64 = 1e-9;
/// Relative tolerance used to group ties among diameter pairs.
pub const EPS_DIAM: f64 = 1e-9;
/// Default angular tolerance for the arc-chain width evaluation.
pub const WIDTH_ARC_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Point2 { x, y }
    }

    pub fn dot(self, other: Point2) -> f64 {
        self.x * other.x + self.y * other.y
    }

    pub fn cross(self, other: Point2) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn dist(self, other: Point2) -> f64 {
        (self - other).norm()
    }

    /// Counterclockwise rotation by a right angle.
    pub fn perp(self) -> Point2 {
        Point2::new(-self.y, self.x)
    }

    pub fn lerp(self, other: Point2, t: f64) -> Point2 {
        self + (other - self) * t
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl Add for Point2 {
    type Output = Point2;
    fn add(self, o: Point2) -> Point2 {
        Point2::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point2 {
    type Output = Point2;
    fn sub(self, o: Point2) -> Point2 {
        Point2::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Point2 {
    type Output = Point2;
    fn mul(self, s: f64) -> Point2 {
        Point2::new(self.x * s, self.y * s)
    }
}

impl Neg for Point2 {
    type Output = Point2;
    fn neg(self) -> Point2 {
        Point2::new(-self.x, -self.y)
    }
}

impl From<[f64; 2]> for Point2 {
    fn from(p: [f64; 2]) -> Self {
        Point2::new(p[0], p[1])
    }
}

/// Normalizes an angle into `[0, 2π)`.
pub fn normalize_angle(theta: f64) -> f64 {
    let t = theta.rem_euclid(TAU);
    if t >= TAU {
        0.0
    } else {
        t
    }
}

/// A unit direction stored as its angle in `[0, 2π)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Direction(f64);

impl Direction {
    pub fn from_angle(theta: f64) -> Self {
        Direction(normalize_angle(theta))
    }

    pub fn from_vector(v: Point2) -> Self {
        Direction::from_angle(v.y.atan2(v.x))
    }

    pub fn angle(self) -> f64 {
        self.0
    }

    pub fn unit(self) -> Point2 {
        let (s, c) = self.0.sin_cos();
        Point2::new(c, s)
    }

    pub fn opposite(self) -> Direction {
        Direction::from_angle(self.0 + std::f64::consts::PI)
    }

    /// The direction rotated counterclockwise by a right angle.
    pub fn perpendicular(self) -> Direction {
        Direction::from_angle(self.0 + std::f64::consts::FRAC_PI_2)
    }
}

/// The line `{x : <x, normal> = offset}`.
///
/// Splitting a region with it yields the left child `{<x, normal> <= offset}`
/// and the right child `{<x, normal> >= offset}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LineCut {
    pub normal: Direction,
    pub offset: f64,
}

impl LineCut {
    pub fn new(normal: Direction, offset: f64) -> Self {
        LineCut { normal, offset }
    }

    /// The line with the given normal passing through `point`.
    pub fn through(point: Point2, normal: Direction) -> Self {
        LineCut { normal, offset: point.dot(normal.unit()) }
    }

    /// The line through two distinct points.
    pub fn through_points(a: Point2, b: Point2) -> Self {
        let normal = Direction::from_vector((b - a).perp());
        LineCut::through(a, normal)
    }

    pub fn signed_distance(&self, p: Point2) -> f64 {
        p.dot(self.normal.unit()) - self.offset
    }
}

/// The region `low <= <x, normal> <= high`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Slab {
    pub normal: Direction,
    pub low: f64,
    pub high: f64,
}

impl Slab {
    pub fn width(&self) -> f64 {
        self.high - self.low
    }
}

/// Nested projection widths `w[0] <= w[1] <= ...` of the bounding orthotope.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrthogonalWidths(Vec<f64>);

impl OrthogonalWidths {
    pub fn new(widths: Vec<f64>) -> Result<Self> {
        if widths.is_empty() {
            return Err(Error::InvalidArgument("orthogonal widths must not be empty".into()));
        }
        if widths.iter().any(|w| !w.is_finite() || *w <= 0.0) {
            return Err(Error::InvalidArgument("orthogonal widths must be positive".into()));
        }
        if widths.windows(2).any(|p| p[0] > p[1]) {
            return Err(Error::InvalidArgument("orthogonal widths must be nondecreasing".into()));
        }
        Ok(OrthogonalWidths(widths))
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn dimension(&self) -> usize {
        self.0.len()
    }
}
