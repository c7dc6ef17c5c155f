//! Medial axis of a convex polygon, rounded bodies `C^ρ`, and the relative
//! width of `C^ρ` with respect to a side as a function of `ρ`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::skeleton::{InnerShape, ShrinkHistory};
use crate::geometry::{normalize_angle, ArcSegmentBody, ConvexPolygon, Feature, Point2, RoundedOrigin};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AxisVertex {
    pub point: Point2,
    pub clearance: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxisEdge {
    pub nodes: (usize, usize),
    /// Polygon sides whose bisector contains the edge.
    pub sides: (usize, usize),
}

/// The medial axis together with the offsetting history that produced it,
/// which also yields the inner parallel bodies needed for rounding.
#[derive(Debug, Clone)]
pub struct MedialAxis {
    pub vertices: Vec<AxisVertex>,
    pub edges: Vec<AxisEdge>,
    polygon: ConvexPolygon,
    history: ShrinkHistory,
}

/// A continuous piecewise affine function on `[breakpoints[0], breakpoints[last]]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PiecewiseAffine {
    breakpoints: Vec<f64>,
    /// `(a, b)` for `a * x + b` on each interval.
    pieces: Vec<(f64, f64)>,
}

impl PiecewiseAffine {
    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn pieces(&self) -> &[(f64, f64)] {
        &self.pieces
    }

    pub fn eval(&self, x: f64) -> f64 {
        let k = self.breakpoints.partition_point(|&b| b <= x).clamp(1, self.pieces.len()) - 1;
        let (a, b) = self.pieces[k];
        a * x + b
    }
}

pub fn medial_axis(c: &ConvexPolygon) -> MedialAxis {
    MedialAxis::new(c)
}

pub fn rounded_body(c: &ConvexPolygon, rho: f64) -> Result<ArcSegmentBody> {
    MedialAxis::new(c).rounded_body(rho)
}

/// Breadth of `C^ρ` in the outward normal direction of side `side`, measured
/// on the constructed arc-segment body.
pub fn relative_width_rounded(c: &ConvexPolygon, side: usize, rho: f64) -> Result<f64> {
    check_side(c, side)?;
    Ok(rounded_body(c, rho)?.breadth(c.edge_normal(side)))
}

pub fn relative_width_function(c: &ConvexPolygon, side: usize) -> Result<PiecewiseAffine> {
    MedialAxis::new(c).relative_width_function(side)
}

pub fn solve_side_equation(c: &ConvexPolygon, side: usize, n: usize) -> Result<f64> {
    let axis = MedialAxis::new(c);
    let f = axis.relative_width_function(side)?;
    axis.solve_side_equation(side, n, &f)
}

fn check_side(c: &ConvexPolygon, side: usize) -> Result<()> {
    if side >= c.len() {
        return Err(Error::InvalidArgument(format!("side {side} out of range for {} sides", c.len())));
    }
    Ok(())
}

impl MedialAxis {
    pub fn new(c: &ConvexPolygon) -> Self {
        let history = ShrinkHistory::new(c.vertices());
        let vertices = history.nodes.iter().map(|&(point, clearance)| AxisVertex { point, clearance }).collect();
        let edges = history.edges.iter().map(|e| AxisEdge { nodes: e.nodes, sides: e.sides }).collect();
        MedialAxis { vertices, edges, polygon: c.clone(), history }
    }

    pub fn polygon(&self) -> &ConvexPolygon {
        &self.polygon
    }

    pub fn inradius(&self) -> f64 {
        self.history.final_time
    }

    pub fn max_clearance(&self) -> f64 {
        self.vertices.iter().map(|v| v.clearance).fold(0.0, f64::max)
    }

    fn check_rho(&self, rho: f64) -> Result<f64> {
        let max = self.inradius();
        if !rho.is_finite() || rho < -1e-12 * max || rho > max * (1.0 + 1e-12) {
            return Err(Error::RhoOutOfRange { rho, max });
        }
        Ok(rho.clamp(0.0, max))
    }

    /// Vertices of the inner parallel body at distance `rho` (one or two
    /// points when it has degenerated).
    pub fn inner_points(&self, rho: f64) -> Result<Vec<Point2>> {
        let rho = self.check_rho(rho)?;
        Ok(match self.history.inner_at(rho) {
            InnerShape::Polygon { vertices, .. } => vertices,
            InnerShape::Segment { start, end, .. } => vec![start, end],
            InnerShape::Point(p) => vec![p],
        })
    }

    /// `C^ρ`: the inner parallel body at distance `ρ` plus a disk of radius `ρ`.
    pub fn rounded_body(&self, rho: f64) -> Result<ArcSegmentBody> {
        let rho = self.check_rho(rho)?;
        let origin = RoundedOrigin { source: self.polygon.clone(), rho };
        if rho == 0.0 {
            let base = ArcSegmentBody::from_polygon(&self.polygon);
            return Ok(ArcSegmentBody::with_origin(base.features().to_vec(), origin));
        }
        let normal = |side: usize| self.history.normals[side];
        let angle = |side: usize| {
            let n = normal(side);
            normalize_angle(n.y.atan2(n.x))
        };
        let min_len = 1e-15 * self.history.scale;
        let mut features = Vec::new();
        match self.history.inner_at(rho) {
            InnerShape::Polygon { edges, vertices } => {
                let m = edges.len();
                for k in 0..m {
                    let before = edges[(k + m - 1) % m];
                    let side = edges[k];
                    let sweep = normalize_angle(angle(side) - angle(before));
                    if sweep > 1e-15 && sweep < 1.5 * PI {
                        features.push(Feature::Arc { center: vertices[k], radius: rho, start: angle(before), sweep });
                    }
                    let shift = normal(side) * rho;
                    let (p, q) = (vertices[k] + shift, vertices[(k + 1) % m] + shift);
                    if p.dist(q) > min_len {
                        features.push(Feature::Segment { start: p, end: q });
                    }
                }
            }
            InnerShape::Segment { start, end, sides: (a, c) } => {
                let (na, nc) = (normal(a) * rho, normal(c) * rho);
                features.push(Feature::Segment { start: start + na, end: end + na });
                features.push(Feature::Arc { center: end, radius: rho, start: angle(a), sweep: PI });
                features.push(Feature::Segment { start: end + nc, end: start + nc });
                features.push(Feature::Arc { center: start, radius: rho, start: angle(c), sweep: PI });
            }
            InnerShape::Point(p) => {
                features.push(Feature::Arc { center: p, radius: rho, start: 0.0, sweep: 2.0 * PI });
            }
        }
        Ok(ArcSegmentBody::with_origin(features, origin))
    }

    /// Breadth of `C^ρ` along the normal of `side`, from the inner body:
    /// the support of a Minkowski sum with a disk is the inner support plus `ρ`.
    pub fn relative_width(&self, side: usize, rho: f64) -> Result<f64> {
        check_side(&self.polygon, side)?;
        let rho = self.check_rho(rho)?;
        let u = self.polygon.edge_normal(side).unit();
        let pts = self.inner_points(rho)?;
        let hi = pts.iter().map(|p| p.dot(u)).fold(f64::NEG_INFINITY, f64::max);
        let lo = pts.iter().map(|p| p.dot(u)).fold(f64::INFINITY, f64::min);
        Ok(hi - lo + 2.0 * rho)
    }

    /// Candidate breakpoints: every axis-vertex clearance, plus 0 and the inradius.
    pub fn breakpoints(&self) -> Vec<f64> {
        let max = self.inradius();
        let mut b: Vec<f64> = self.vertices.iter().map(|v| v.clearance.clamp(0.0, max)).collect();
        b.push(0.0);
        b.push(max);
        b.sort_by(f64::total_cmp);
        b.dedup_by(|x, y| (*x - *y).abs() <= 1e-12 * max);
        if let Some(last) = b.last_mut() {
            *last = max;
        }
        b
    }

    pub fn relative_width_function(&self, side: usize) -> Result<PiecewiseAffine> {
        check_side(&self.polygon, side)?;
        let bps = self.breakpoints();
        let values: Vec<f64> = bps.iter().map(|&r| self.relative_width(side, r)).collect::<Result<_>>()?;
        let mut out = PiecewiseAffine { breakpoints: vec![bps[0]], pieces: Vec::new() };
        for k in 0..bps.len() - 1 {
            self.fit(side, (bps[k], values[k]), (bps[k + 1], values[k + 1]), 0, &mut out)?;
        }
        Ok(out)
    }

    fn fit(&self, side: usize, lo: (f64, f64), hi: (f64, f64), depth: usize, out: &mut PiecewiseAffine) -> Result<()> {
        let a = (hi.1 - lo.1) / (hi.0 - lo.0);
        let b = lo.1 - a * lo.0;
        let mid = 0.5 * (lo.0 + hi.0);
        let fm = self.relative_width(side, mid)?;
        if (fm - (a * mid + b)).abs() <= 1e-9 * fm.abs().max(self.history.scale * 1e-3) {
            out.breakpoints.push(hi.0);
            out.pieces.push((a, b));
            return Ok(());
        }
        if depth >= 30 || hi.0 - lo.0 <= 1e-12 * self.inradius() {
            return Err(Error::NotAffineBetweenBreakpoints { lo: lo.0, hi: hi.0 });
        }
        self.fit(side, lo, (mid, fm), depth + 1, out)?;
        self.fit(side, (mid, fm), hi, depth + 1, out)
    }

    /// Root of `f(ρ) = 2nρ` for the relative width function `f` of `side`.
    pub fn solve_side_equation(&self, side: usize, n: usize, f: &PiecewiseAffine) -> Result<f64> {
        if n < 2 {
            return Err(Error::InvalidArgument("n must be at least 2".into()));
        }
        let two_n = 2.0 * n as f64;
        let bps = f.breakpoints();
        for (k, &(a, b)) in f.pieces().iter().enumerate() {
            let (lo, hi) = (bps[k], bps[k + 1]);
            if (a - two_n) * hi + b <= 0.0 {
                let rho = (b / (two_n - a)).clamp(lo, hi);
                let residual = self.relative_width(side, rho)? - two_n * rho;
                let w = self.polygon.width().value;
                if residual.abs() > 1e-10 * w {
                    return Err(Error::VerificationFailed(format!(
                        "side {side}: residual {residual:e} at rho {rho}"
                    )));
                }
                return Ok(rho);
            }
        }
        Err(Error::NoRootInRange { side })
    }
}
