use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use super::{normalize_angle, ConvexPolygon, Direction, LineCut, Point2};
use crate::error::{Error, Result};

/// One boundary piece of an [`ArcSegmentBody`], traversed counterclockwise.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Feature {
    Segment { start: Point2, end: Point2 },
    /// Circular arc from angle `start` through `sweep` radians (`0 < sweep <= 2π`).
    Arc { center: Point2, radius: f64, start: f64, sweep: f64 },
}

impl Feature {
    pub fn start_point(&self) -> Point2 {
        match *self {
            Feature::Segment { start, .. } => start,
            Feature::Arc { center, radius, start, .. } => center + Direction::from_angle(start).unit() * radius,
        }
    }

    pub fn end_point(&self) -> Point2 {
        match *self {
            Feature::Segment { end, .. } => end,
            Feature::Arc { center, radius, start, sweep } => {
                center + Direction::from_angle(start + sweep).unit() * radius
            }
        }
    }

    /// Outward normal angle where the feature begins.
    fn start_normal(&self) -> f64 {
        match *self {
            Feature::Segment { start, end } => {
                let d = end - start;
                Direction::from_vector(Point2::new(d.y, -d.x)).angle()
            }
            Feature::Arc { start, .. } => normalize_angle(start),
        }
    }

    fn end_normal(&self) -> f64 {
        match *self {
            Feature::Segment { .. } => self.start_normal(),
            Feature::Arc { start, sweep, .. } => normalize_angle(start + sweep),
        }
    }

    fn turning(&self) -> f64 {
        match *self {
            Feature::Segment { .. } => 0.0,
            Feature::Arc { sweep, .. } => sweep,
        }
    }

    fn length(&self) -> f64 {
        match *self {
            Feature::Segment { start, end } => start.dist(end),
            Feature::Arc { radius, sweep, .. } => radius * sweep,
        }
    }
}

/// Records that a body is the rounded body of `source` at radius `rho`.
#[derive(Debug, Clone, PartialEq)]
pub struct RoundedOrigin {
    pub source: ConvexPolygon,
    pub rho: f64,
}

/// Convex body bounded by a closed counterclockwise chain of segments and
/// circular arcs.
#[derive(Debug, Clone, PartialEq)]
pub struct ArcSegmentBody {
    features: Vec<Feature>,
    origin: Option<RoundedOrigin>,
}

/// What realises the support function on an angular range.
#[derive(Debug, Clone, Copy)]
enum Generator {
    Point(Point2),
    Circle(Point2, f64),
}

impl Generator {
    fn anchor(self) -> (Point2, f64) {
        match self {
            Generator::Point(p) => (p, 0.0),
            Generator::Circle(c, r) => (c, r),
        }
    }
}

/// Support function broken into ranges `[start, start + len)` with a fixed generator.
struct SupportSequence {
    base: f64,
    starts: Vec<f64>,
    gens: Vec<Generator>,
}

impl SupportSequence {
    fn lookup(&self, theta: f64) -> Generator {
        let rel = (theta - self.base).rem_euclid(TAU);
        let idx = self.starts.partition_point(|&s| s <= rel).saturating_sub(1);
        self.gens[idx]
    }
}

/// Extremes of `<v, u(θ)> + k` over `θ ∈ [a, b]`.
fn sinusoid_extremes(v: Point2, k: f64, a: f64, b: f64) -> ((f64, f64), (f64, f64)) {
    let eval = |t: f64| v.x * t.cos() + v.y * t.sin() + k;
    let mut lo = (eval(a), a);
    let mut hi = lo;
    let mut consider = |t: f64| {
        let f = eval(t);
        if f < lo.0 {
            lo = (f, t);
        }
        if f > hi.0 {
            hi = (f, t);
        }
    };
    consider(b);
    if v.norm() > 0.0 {
        let psi = v.y.atan2(v.x);
        for crit in [psi, psi + PI] {
            let off = (crit - a).rem_euclid(TAU);
            if off < b - a {
                consider(a + off);
            }
        }
    }
    (lo, hi)
}

impl ArcSegmentBody {
    pub fn new(features: Vec<Feature>) -> Result<Self> {
        if features.is_empty() {
            return Err(Error::TooFewVertices(0));
        }
        let body = ArcSegmentBody { features, origin: None };
        let scale = body.diagonal();
        if !(scale > 0.0) || !scale.is_finite() {
            return Err(Error::DegenerateArea);
        }
        let n = body.features.len();
        for k in 0..n {
            let f = &body.features[k];
            if let Feature::Arc { radius, sweep, .. } = *f {
                if !(radius > 0.0) || !(sweep > 0.0) || sweep > TAU + 1e-12 {
                    return Err(Error::InvalidArgument("arc needs positive radius and sweep in (0, 2π]".into()));
                }
            }
            if f.end_point().dist(body.features[(k + 1) % n].start_point()) > 1e-9 * scale {
                return Err(Error::InvalidArgument("feature chain is not closed".into()));
            }
        }
        if (body.total_turning() - TAU).abs() > 1e-6 {
            return Err(Error::NotConvex);
        }
        if body.area() <= 0.0 {
            return Err(Error::DegenerateArea);
        }
        Ok(body)
    }

    pub fn disk(center: Point2, radius: f64) -> Result<Self> {
        ArcSegmentBody::new(vec![Feature::Arc { center, radius, start: 0.0, sweep: TAU }])
    }

    pub fn from_polygon(poly: &ConvexPolygon) -> Self {
        let n = poly.len();
        let features = (0..n)
            .map(|i| {
                let (start, end) = poly.edge(i);
                Feature::Segment { start, end }
            })
            .collect();
        ArcSegmentBody { features, origin: None }
    }

    pub(crate) fn with_origin(features: Vec<Feature>, origin: RoundedOrigin) -> Self {
        ArcSegmentBody { features, origin: Some(origin) }
    }

    pub fn features(&self) -> &[Feature] {
        &self.features
    }

    pub fn origin(&self) -> Option<&RoundedOrigin> {
        self.origin.as_ref()
    }

    fn corner_gap(&self, k: usize) -> f64 {
        let n = self.features.len();
        let prev = &self.features[(k + n - 1) % n];
        let gap = normalize_angle(self.features[k].start_normal() - prev.end_normal());
        if gap > 1.5 * PI {
            0.0
        } else {
            gap
        }
    }

    fn total_turning(&self) -> f64 {
        (0..self.features.len()).map(|k| self.corner_gap(k) + self.features[k].turning()).sum()
    }

    pub fn support(&self, u: Direction) -> f64 {
        let d = u.unit();
        let theta = u.angle();
        let mut best = f64::NEG_INFINITY;
        for f in &self.features {
            best = best.max(f.start_point().dot(d));
            if let Feature::Arc { center, radius, start, sweep } = *f {
                if sweep >= TAU || (theta - start).rem_euclid(TAU) <= sweep {
                    best = best.max(center.dot(d) + radius);
                }
            }
        }
        best
    }

    pub fn breadth(&self, u: Direction) -> f64 {
        self.support(u) + self.support(u.opposite())
    }

    pub fn diagonal(&self) -> f64 {
        let (lo, hi) = self.bounds();
        (hi - lo).norm()
    }

    pub fn bounds(&self) -> (Point2, Point2) {
        let h = |a: f64| self.support(Direction::from_angle(a));
        (Point2::new(-h(PI), -h(1.5 * PI)), Point2::new(h(0.0), h(0.5 * PI)))
    }

    pub fn area(&self) -> f64 {
        let mut twice = 0.0;
        for f in &self.features {
            match *f {
                Feature::Segment { start, end } => twice += start.cross(end),
                Feature::Arc { center, radius, start, sweep } => {
                    let e = start + sweep;
                    twice += radius * center.x * (e.sin() - start.sin())
                        - radius * center.y * (e.cos() - start.cos())
                        + radius * radius * sweep;
                }
            }
        }
        twice / 2.0
    }

    fn support_sequence(&self) -> SupportSequence {
        let n = self.features.len();
        let mut ranges: Vec<(f64, f64, Generator)> = Vec::with_capacity(2 * n);
        for k in 0..n {
            let f = self.features[k];
            let gap = self.corner_gap(k);
            if gap > 0.0 {
                let prev = &self.features[(k + n - 1) % n];
                ranges.push((prev.end_normal(), gap, Generator::Point(f.start_point())));
            }
            if let Feature::Arc { center, radius, start, sweep } = f {
                ranges.push((normalize_angle(start), sweep, Generator::Circle(center, radius)));
            }
        }
        let base = ranges[0].0;
        let mut starts = Vec::with_capacity(ranges.len());
        let mut acc = 0.0;
        for r in &ranges {
            starts.push(acc);
            acc += r.1;
        }
        SupportSequence { base, starts, gens: ranges.into_iter().map(|r| r.2).collect() }
    }

    /// Minimum and maximum of the breadth function with their directions,
    /// from its closed form on each range where both supporting generators
    /// are fixed.
    fn breadth_extremes(&self) -> ((f64, f64), (f64, f64)) {
        let seq = self.support_sequence();
        let mut cuts: Vec<f64> = seq
            .starts
            .iter()
            .flat_map(|&s| [s, (s - PI).rem_euclid(TAU)])
            .collect();
        cuts.sort_by(f64::total_cmp);
        cuts.dedup_by(|a, b| (*a - *b).abs() < 1e-13);
        let m = cuts.len();
        let mut lo = (f64::INFINITY, 0.0);
        let mut hi = (f64::NEG_INFINITY, 0.0);
        for i in 0..m {
            let a = cuts[i];
            let b = if i + 1 < m { cuts[i + 1] } else { cuts[0] + TAU };
            if b - a <= 0.0 {
                continue;
            }
            let mid = seq.base + 0.5 * (a + b);
            let (p1, r1) = seq.lookup(mid).anchor();
            let (p2, r2) = seq.lookup(mid + PI).anchor();
            let (l, h) = sinusoid_extremes(p1 - p2, r1 + r2, seq.base + a, seq.base + b);
            if l.0 < lo.0 {
                lo = l;
            }
            if h.0 > hi.0 {
                hi = h;
            }
        }
        (lo, hi)
    }

    /// Minimal width. The breadth is minimised exactly on each range of
    /// fixed supporting generators; `tol` bounds the allowed disagreement
    /// with a direct support evaluation at the minimising direction.
    pub fn width_arc(&self, tol: f64) -> Result<f64> {
        Ok(self.width_with_direction(tol)?.0)
    }

    pub fn width_with_direction(&self, tol: f64) -> Result<(f64, Direction)> {
        let ((value, theta), _) = self.breadth_extremes();
        let dir = Direction::from_angle(theta);
        let direct = self.breadth(dir);
        if (direct - value).abs() > tol.max(1e-12) * self.diagonal().max(1.0) * 1e3 {
            return Err(Error::ToleranceNotReached { tol, iterations: 0 });
        }
        Ok((value.min(direct), dir))
    }

    pub fn diameter(&self) -> f64 {
        let (_, (value, theta)) = self.breadth_extremes();
        value.max(self.breadth(Direction::from_angle(theta)))
    }

    /// Keeps the part with `sign * (<x, n> - offset) <= 0`.
    fn half(&self, cut: &LineCut, sign: f64) -> Result<(Vec<Feature>, Option<(Point2, Point2)>)> {
        let scale = self.diagonal();
        let tol = 1e-12 * scale;
        let nrm = cut.normal.unit();
        let s = |p: Point2| sign * (p.dot(nrm) - cut.offset);
        let mut kept: Vec<Feature> = Vec::new();
        let mut cut_any = false;
        for f in &self.features {
            match *f {
                Feature::Segment { start, end } => {
                    let (sp, sq) = (s(start), s(end));
                    if sp <= tol && sq <= tol {
                        kept.push(*f);
                    } else if sp > tol && sq > tol {
                        cut_any = true;
                    } else {
                        cut_any = true;
                        let x = start.lerp(end, sp / (sp - sq));
                        if sp <= tol {
                            kept.push(Feature::Segment { start, end: x });
                        } else {
                            kept.push(Feature::Segment { start: x, end });
                        }
                    }
                }
                Feature::Arc { center, radius, start, sweep } => {
                    let theta_n = cut.normal.angle();
                    let k = (cut.offset - center.dot(nrm)) / radius;
                    let mut splits = vec![0.0];
                    if k.abs() < 1.0 {
                        let a = k.acos();
                        let mut locals: Vec<f64> = [theta_n + a, theta_n - a]
                            .iter()
                            .map(|&phi| (phi - start).rem_euclid(TAU))
                            .filter(|&l| l > 1e-14 && l < sweep - 1e-14)
                            .collect();
                        locals.sort_by(f64::total_cmp);
                        splits.extend(locals);
                    }
                    splits.push(sweep);
                    for w in splits.windows(2) {
                        let (a, b) = (w[0], w[1]);
                        let mid = center + Direction::from_angle(start + 0.5 * (a + b)).unit() * radius;
                        if s(mid) <= 0.0 {
                            if b - a > 1e-15 {
                                kept.push(Feature::Arc { center, radius, start: start + a, sweep: b - a });
                            }
                        } else {
                            cut_any = true;
                        }
                    }
                }
            }
        }
        kept.retain(|f| f.length() > 1e-14 * scale);
        if kept.is_empty() || !cut_any {
            return Err(Error::CutMissesInterior);
        }
        let n = kept.len();
        let gap = (0..n)
            .filter(|&i| kept[i].end_point().dist(kept[(i + 1) % n].start_point()) > 1e-10 * scale)
            .max_by(|&i, &j| {
                let gi = kept[i].end_point().dist(kept[(i + 1) % n].start_point());
                let gj = kept[j].end_point().dist(kept[(j + 1) % n].start_point());
                gi.total_cmp(&gj)
            });
        let Some(i) = gap else {
            return Err(Error::CutMissesInterior);
        };
        let a = kept[i].end_point();
        let b = kept[(i + 1) % n].start_point();
        kept.insert(i + 1, Feature::Segment { start: a, end: b });
        Ok((kept, Some((a, b))))
    }

    /// Splits the body along `cut` into `(left, right)`; arcs are split where
    /// they cross the line and each piece is closed by the chord.
    pub fn clip(&self, cut: &LineCut) -> Result<(ArcSegmentBody, ArcSegmentBody)> {
        let (lf, _) = self.half(cut, 1.0)?;
        let (rf, _) = self.half(cut, -1.0)?;
        let area = self.area();
        let piece = |features: Vec<Feature>| -> Result<ArcSegmentBody> {
            let b = ArcSegmentBody { features, origin: None };
            if b.area() <= 1e-12 * area {
                return Err(Error::CutMissesInterior);
            }
            Ok(b)
        };
        Ok((piece(lf)?, piece(rf)?))
    }

    pub fn chord(&self, cut: &LineCut) -> Option<(Point2, Point2)> {
        self.half(cut, 1.0).ok().and_then(|(_, c)| c)
    }

    /// Boundary points, `per_arc` samples along every arc plus all feature ends.
    pub fn sample_boundary(&self, per_arc: usize) -> Vec<Point2> {
        let mut out = Vec::new();
        for f in &self.features {
            out.push(f.start_point());
            if let Feature::Arc { center, radius, start, sweep } = *f {
                for i in 1..per_arc {
                    let t = start + sweep * i as f64 / per_arc as f64;
                    out.push(center + Direction::from_angle(t).unit() * radius);
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> ConvexPolygon {
        ConvexPolygon::rectangle(1.0, 1.0).unwrap()
    }

    #[test]
    fn disk_support_is_radius() {
        let d = ArcSegmentBody::disk(Point2::new(0.0, 0.0), 2.0).unwrap();
        for k in 0..16 {
            let u = Direction::from_angle(k as f64 * 0.4);
            assert!((d.support(u) - 2.0).abs() < 1e-15);
        }
        assert!((d.width_arc(1e-10).unwrap() - 4.0).abs() < 1e-14);
        assert!((d.diameter() - 4.0).abs() < 1e-14);
        assert!((d.area() - 4.0 * PI).abs() < 1e-12);
    }

    #[test]
    fn polygon_chain_matches_polygon() {
        let p = ConvexPolygon::new(&[
            Point2::new(0.0, 0.0),
            Point2::new(2.0, 0.2),
            Point2::new(2.5, 1.0),
            Point2::new(0.7, 1.9),
        ])
        .unwrap();
        let b = ArcSegmentBody::from_polygon(&p);
        assert!((b.width_arc(1e-10).unwrap() - p.width().value).abs() < 1e-12);
        assert!((b.diameter() - p.diameter().value).abs() < 1e-12);
        assert!((b.area() - p.area()).abs() < 1e-12);
    }

    #[test]
    fn half_disk_width() {
        let d = ArcSegmentBody::disk(Point2::new(0.0, 0.0), 1.0).unwrap();
        let (l, r) = d.clip(&LineCut::new(Direction::from_angle(0.0), 0.0)).unwrap();
        assert!((l.width_arc(1e-10).unwrap() - 1.0).abs() < 1e-12);
        assert!((r.width_arc(1e-10).unwrap() - 1.0).abs() < 1e-12);
        assert!((l.area() + r.area() - PI).abs() < 1e-12);
        assert!((l.diameter() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn clip_square_chain() {
        let b = ArcSegmentBody::from_polygon(&square());
        let (l, r) = b.clip(&LineCut::new(Direction::from_angle(0.0), 0.5)).unwrap();
        assert!((l.area() - 0.5).abs() < 1e-14);
        assert!((r.width_arc(1e-10).unwrap() - 0.5).abs() < 1e-14);
        assert_eq!(
            b.clip(&LineCut::new(Direction::from_angle(0.0), 2.0)),
            Err(Error::CutMissesInterior)
        );
    }
}
