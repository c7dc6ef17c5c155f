use std::collections::BTreeSet;

use super::skeleton::ShrinkHistory;
use super::{Direction, LineCut, OrthogonalWidths, Point2, Slab, EPS_DIAM, EPS_VERTEX};
use crate::error::{Error, Result};

/// A strictly convex polygon with counterclockwise vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvexPolygon {
    vertices: Vec<Point2>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Width {
    pub value: f64,
    /// One boundary line of the slab contains `edge`.
    pub slab: Slab,
    pub edge: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Diameter {
    pub value: f64,
    /// Vertex index pairs `(i, j)` with `i < j` attaining the diameter.
    pub pairs: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Inradius {
    pub value: f64,
    pub center: Point2,
}

fn bbox_diagonal(points: &[Point2]) -> f64 {
    let (mut lo, mut hi) = (points[0], points[0]);
    for p in points {
        lo = Point2::new(lo.x.min(p.x), lo.y.min(p.y));
        hi = Point2::new(hi.x.max(p.x), hi.y.max(p.y));
    }
    (hi - lo).norm()
}

fn signed_area(points: &[Point2]) -> f64 {
    let n = points.len();
    (0..n).map(|i| points[i].cross(points[(i + 1) % n])).sum::<f64>() / 2.0
}

/// Cleans a raw vertex list into a counterclockwise strictly convex ring.
fn normalize(raw: &[Point2]) -> Result<Vec<Point2>> {
    if raw.len() < 3 {
        return Err(Error::TooFewVertices(raw.len()));
    }
    if raw.iter().any(|p| !p.is_finite()) {
        return Err(Error::NonFinite);
    }
    let diag = bbox_diagonal(raw);
    if diag == 0.0 {
        return Err(Error::DegenerateArea);
    }
    let eps = EPS_VERTEX * diag;

    let mut pts: Vec<Point2> = Vec::with_capacity(raw.len());
    for &p in raw {
        if pts.last().is_none_or(|q: &Point2| q.dist(p) > eps) {
            pts.push(p);
        }
    }
    while pts.len() > 1 && pts[0].dist(*pts.last().unwrap()) <= eps {
        pts.pop();
    }
    if pts.len() < 3 {
        return Err(Error::TooFewVertices(pts.len()));
    }
    let area = signed_area(&pts);
    if area.abs() <= eps * diag {
        return Err(Error::DegenerateArea);
    }
    if area < 0.0 {
        pts.reverse();
    }

    loop {
        let n = pts.len();
        if n < 3 {
            return Err(Error::DegenerateArea);
        }
        let mut removed = None;
        for i in 0..n {
            let p = pts[(i + n - 1) % n];
            let q = pts[i];
            let r = pts[(i + 1) % n];
            let chord = (r - p).norm();
            let dist = (q - p).cross(r - q).abs() / chord.max(f64::MIN_POSITIVE);
            if dist <= eps {
                if (q - p).dot(r - q) > 0.0 {
                    removed = Some(i);
                    break;
                }
                return Err(Error::NotConvex);
            }
        }
        match removed {
            Some(i) => {
                pts.remove(i);
            }
            None => break,
        }
    }

    let n = pts.len();
    let mut total_turn = 0.0;
    for i in 0..n {
        let d0 = pts[i] - pts[(i + n - 1) % n];
        let d1 = pts[(i + 1) % n] - pts[i];
        let c = d0.cross(d1);
        if c <= 0.0 {
            return Err(Error::NotConvex);
        }
        total_turn += c.atan2(d0.dot(d1));
    }
    if (total_turn - std::f64::consts::TAU).abs() > 1e-6 {
        return Err(Error::NotConvex);
    }
    Ok(pts)
}

/// Validates raw vertices into a counterclockwise strictly convex polygon.
pub fn validate_polygon(raw: &[Point2]) -> Result<ConvexPolygon> {
    ConvexPolygon::new(raw)
}

impl ConvexPolygon {
    pub fn new(raw: &[Point2]) -> Result<Self> {
        Ok(ConvexPolygon { vertices: normalize(raw)? })
    }

    /// Regular `k`-gon inscribed in the circle of the given radius, with a
    /// vertex at angle `phase`.
    pub fn regular(k: usize, center: Point2, radius: f64, phase: f64) -> Result<Self> {
        let pts: Vec<Point2> = (0..k)
            .map(|i| {
                let t = phase + std::f64::consts::TAU * i as f64 / k as f64;
                center + Point2::new(t.cos(), t.sin()) * radius
            })
            .collect();
        ConvexPolygon::new(&pts)
    }

    pub fn rectangle(width: f64, height: f64) -> Result<Self> {
        ConvexPolygon::new(&[
            Point2::new(0.0, 0.0),
            Point2::new(width, 0.0),
            Point2::new(width, height),
            Point2::new(0.0, height),
        ])
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertex(&self, i: usize) -> Point2 {
        self.vertices[i % self.vertices.len()]
    }

    /// Edge `i` runs from vertex `i` to vertex `i + 1`.
    pub fn edge(&self, i: usize) -> (Point2, Point2) {
        (self.vertex(i), self.vertex(i + 1))
    }

    pub fn edge_normal(&self, i: usize) -> Direction {
        let (p, q) = self.edge(i);
        let d = q - p;
        Direction::from_vector(Point2::new(d.y, -d.x))
    }

    pub fn diagonal(&self) -> f64 {
        bbox_diagonal(&self.vertices)
    }

    pub fn bounds(&self) -> (Point2, Point2) {
        let (mut lo, mut hi) = (self.vertices[0], self.vertices[0]);
        for p in &self.vertices {
            lo = Point2::new(lo.x.min(p.x), lo.y.min(p.y));
            hi = Point2::new(hi.x.max(p.x), hi.y.max(p.y));
        }
        (lo, hi)
    }

    pub fn area(&self) -> f64 {
        signed_area(&self.vertices)
    }

    pub fn centroid(&self) -> Point2 {
        let n = self.len();
        let (mut cx, mut cy, mut a) = (0.0, 0.0, 0.0);
        for i in 0..n {
            let p = self.vertices[i];
            let q = self.vertices[(i + 1) % n];
            let c = p.cross(q);
            a += c;
            cx += (p.x + q.x) * c;
            cy += (p.y + q.y) * c;
        }
        Point2::new(cx / (3.0 * a), cy / (3.0 * a))
    }

    pub fn support(&self, u: Direction) -> f64 {
        let d = u.unit();
        self.vertices.iter().map(|p| p.dot(d)).fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn breadth(&self, u: Direction) -> f64 {
        self.support(u) + self.support(u.opposite())
    }

    /// Distance from vertex `j` to the line of edge `i` (nonnegative inside).
    fn depth(&self, i: usize, j: usize) -> f64 {
        let n = self.edge_normal(i).unit();
        (self.vertex(i) - self.vertex(j)).dot(n)
    }

    /// For every edge, the index of a farthest vertex and its distance,
    /// obtained by advancing a caliper around the polygon.
    fn calipers(&self) -> Vec<(usize, f64)> {
        let n = self.len();
        let normals: Vec<Point2> = (0..n).map(|i| self.edge_normal(i).unit()).collect();
        let depth = |i: usize, j: usize| (self.vertices[i] - self.vertices[j % n]).dot(normals[i]);
        let mut j = (0..n).max_by(|&a, &b| depth(0, a).total_cmp(&depth(0, b))).unwrap();
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let mut guard = 0;
            while depth(i, j + 1) > depth(i, j) && guard < n {
                j = (j + 1) % n;
                guard += 1;
            }
            out.push((j, depth(i, j)));
        }
        out
    }

    /// Minimal width; one line of the optimal slab contains an edge.
    pub fn width(&self) -> Width {
        let cal = self.calipers();
        let (edge, &(_, value)) =
            cal.iter().enumerate().min_by(|a, b| a.1 .1.total_cmp(&b.1 .1)).unwrap();
        let normal = self.edge_normal(edge);
        let high = self.vertex(edge).dot(normal.unit());
        Width { value, slab: Slab { normal, low: high - value, high }, edge }
    }

    /// Diameter by rotating calipers, with all attaining antipodal pairs.
    pub fn diameter(&self) -> Diameter {
        let n = self.len();
        let cal = self.calipers();
        let mut candidates = BTreeSet::new();
        for (i, &(j, d)) in cal.iter().enumerate() {
            let near = |k: usize| self.depth(i, k) >= d * (1.0 - 1e-9);
            let mut ks = vec![j];
            let mut k = (j + 1) % n;
            while k != j && near(k) {
                ks.push(k);
                k = (k + 1) % n;
            }
            let mut k = (j + n - 1) % n;
            while k != j && near(k) {
                ks.push(k);
                k = (k + n - 1) % n;
            }
            for k in ks {
                for e in [i, (i + 1) % n] {
                    if e != k {
                        candidates.insert((e.min(k), e.max(k)));
                    }
                }
            }
        }
        let dist = |&(a, b): &(usize, usize)| self.vertices[a].dist(self.vertices[b]);
        let value = candidates.iter().map(dist).fold(0.0, f64::max);
        let pairs = candidates.into_iter().filter(|p| dist(p) >= value * (1.0 - EPS_DIAM)).collect();
        Diameter { value, pairs }
    }

    /// Inradius and an incenter, from the inward offsetting process.
    pub fn inradius(&self) -> Inradius {
        let h = ShrinkHistory::new(&self.vertices);
        Inradius { value: h.final_time, center: h.center() }
    }

    pub fn orthogonal_widths(&self) -> OrthogonalWidths {
        let w = self.width();
        let w1 = self.breadth(w.slab.normal.perpendicular());
        debug_assert!(w1 >= w.value * (1.0 - 1e-12));
        OrthogonalWidths::new(vec![w.value, w1.max(w.value)]).expect("positive widths")
    }

    /// Splits the polygon along `cut` into `(left, right)` pieces.
    pub fn clip(&self, cut: &LineCut) -> Result<(ConvexPolygon, ConvexPolygon)> {
        let n = self.len();
        let tol = 1e-12 * self.diagonal();
        let s: Vec<f64> = self.vertices.iter().map(|&p| cut.signed_distance(p)).collect();
        let smax = s.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let smin = s.iter().cloned().fold(f64::INFINITY, f64::min);
        if smax <= tol || smin >= -tol {
            return Err(Error::CutMissesInterior);
        }
        let mut left = Vec::with_capacity(n + 2);
        let mut right = Vec::with_capacity(n + 2);
        for i in 0..n {
            let j = (i + 1) % n;
            let (p, q) = (self.vertices[i], self.vertices[j]);
            let (sp, sq) = (s[i], s[j]);
            if sp <= tol {
                left.push(p);
            }
            if sp >= -tol {
                right.push(p);
            }
            if (sp < -tol && sq > tol) || (sp > tol && sq < -tol) {
                let x = p.lerp(q, sp / (sp - sq));
                left.push(x);
                right.push(x);
            }
        }
        let area = self.area();
        // Pieces of a convex polygon are convex; a piece that fails validation
        // is a sliver flattened by rounding.
        let piece = |pts: Vec<Point2>| -> Result<ConvexPolygon> {
            let poly = ConvexPolygon::new(&pts).map_err(|_| Error::CutMissesInterior)?;
            if poly.area() <= 1e-12 * area {
                return Err(Error::CutMissesInterior);
            }
            Ok(poly)
        };
        Ok((piece(left)?, piece(right)?))
    }

    /// Intersection of the cut line with the polygon.
    pub fn chord(&self, cut: &LineCut) -> Option<(Point2, Point2)> {
        let n = self.len();
        let s: Vec<f64> = self.vertices.iter().map(|&p| cut.signed_distance(p)).collect();
        let mut pts = Vec::new();
        for i in 0..n {
            let j = (i + 1) % n;
            if s[i] == 0.0 {
                pts.push(self.vertices[i]);
            } else if (s[i] < 0.0) != (s[j] < 0.0) && s[j] != 0.0 {
                pts.push(self.vertices[i].lerp(self.vertices[j], s[i] / (s[i] - s[j])));
            }
        }
        if pts.len() < 2 {
            return None;
        }
        let dir = cut.normal.perpendicular().unit();
        let a = *pts.iter().min_by(|a, b| a.dot(dir).total_cmp(&b.dot(dir))).unwrap();
        let b = *pts.iter().max_by(|a, b| a.dot(dir).total_cmp(&b.dot(dir))).unwrap();
        Some((a, b))
    }

    pub fn contains(&self, p: Point2, tol: f64) -> bool {
        (0..self.len()).all(|i| {
            let n = self.edge_normal(i).unit();
            (p - self.vertex(i)).dot(n) <= tol
        })
    }
}
