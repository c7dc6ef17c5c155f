//! Max-min solvers: diameter (value, existence, construction), width
//! (bounds and the two-piece optimum) and inradius (two-piece fixed point).

use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::division::DivisionTree;
use crate::error::{Error, Result};
use crate::geometry::{Body, ConvexPolygon, Direction, LineCut, Magnitude, Point2};
use crate::medial::MedialAxis;
use crate::minmax::{balance, check_n, BALANCE_BUDGET};
use crate::report::{is_balanced, BoundsReport, Feasibility, Objective, SolveReport};

/// Default number of cut directions scanned over `[0, π)`.
pub const DIRECTION_SAMPLES: usize = 720;
/// Golden-section refinement stops below this angular bracket.
pub const ANGLE_TOL: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SegmentLocation {
    Interior,
    Boundary,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SetKind {
    Fan,
    Triangle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiameterSegment {
    /// Polygon vertex indices, smaller first.
    pub ends: (usize, usize),
    pub location: SegmentLocation,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiameterSegmentSet {
    pub segments: Vec<DiameterSegment>,
    pub kind: SetKind,
    /// Shared endpoint of a fan.
    pub apex: Option<usize>,
    pub a: usize,
    pub b: usize,
    pub delta: usize,
    pub capacity: usize,
}

impl DiameterSegmentSet {
    fn build(c: &ConvexPolygon, pairs: &BTreeSet<(usize, usize)>, kind: SetKind, apex: Option<usize>) -> Self {
        let n = c.len();
        let segments: Vec<DiameterSegment> = pairs
            .iter()
            .map(|&(i, j)| {
                let adjacent = (j + n - i) % n == 1 || (i + n - j) % n == 1;
                let location = if adjacent { SegmentLocation::Boundary } else { SegmentLocation::Interior };
                DiameterSegment { ends: (i, j), location }
            })
            .collect();
        let a = segments.iter().filter(|s| s.location == SegmentLocation::Interior).count();
        let b = segments.len() - a;
        let delta = usize::from(kind == SetKind::Triangle);
        DiameterSegmentSet { segments, kind, apex, a, b, delta, capacity: 2 * a + b - delta }
    }

    fn pair_set(&self) -> BTreeSet<(usize, usize)> {
        self.segments.iter().map(|s| s.ends).collect()
    }
}

/// The optimal value `D̃_n(C) = D(C)` for every `n`.
pub fn maxmin_diameter_value(c: &ConvexPolygon) -> f64 {
    c.diameter().value
}

/// Maximal families of diameter segments with disjoint interiors: fans
/// sharing an endpoint, and equilateral triangles.
pub fn enumerate_diameter_segment_sets(c: &ConvexPolygon) -> Vec<DiameterSegmentSet> {
    let pairs: BTreeSet<(usize, usize)> = c.diameter().pairs.into_iter().collect();
    let mut sets: Vec<DiameterSegmentSet> = Vec::new();
    for v in 0..c.len() {
        let fan: BTreeSet<(usize, usize)> = pairs.iter().filter(|p| p.0 == v || p.1 == v).cloned().collect();
        if !fan.is_empty() {
            sets.push(DiameterSegmentSet::build(c, &fan, SetKind::Fan, Some(v)));
        }
    }
    for &(i, j) in &pairs {
        for &(j2, k) in pairs.range((j, 0)..(j + 1, 0)) {
            debug_assert_eq!(j2, j);
            if pairs.contains(&(i, k)) {
                let tri: BTreeSet<(usize, usize)> = [(i, j), (j, k), (i, k)].into_iter().collect();
                sets.push(DiameterSegmentSet::build(c, &tri, SetKind::Triangle, None));
            }
        }
    }
    let keys: Vec<BTreeSet<(usize, usize)>> = sets.iter().map(|s| s.pair_set()).collect();
    let mut out = Vec::new();
    for (idx, s) in sets.into_iter().enumerate() {
        let dominated = keys.iter().enumerate().any(|(o, k)| {
            o != idx && keys[idx].is_subset(k) && (k.len() > keys[idx].len() || o < idx)
        });
        if !dominated {
            out.push(s);
        }
    }
    out
}

/// Whether an optimal `n`-division exists, the largest such `n`, and the
/// family attaining it.
pub fn maxmin_diameter_feasible(c: &ConvexPolygon, n: usize) -> (Feasibility, DiameterSegmentSet) {
    let sets = enumerate_diameter_segment_sets(c);
    let best = sets
        .into_iter()
        .fold(None::<DiameterSegmentSet>, |acc, s| match acc {
            Some(a) if a.capacity >= s.capacity => Some(a),
            _ => Some(s),
        })
        .expect("every polygon has a diameter segment");
    let f = Feasibility { feasible: n <= best.capacity, max_n: best.capacity, a: best.a, b: best.b, delta: best.delta };
    (f, best)
}

fn line_at(p: Point2, angle: f64) -> LineCut {
    LineCut::through(p, Direction::from_angle(angle + 0.5 * PI))
}

fn split_at_point(tree: &mut DivisionTree, probe: Point2, cut: LineCut) -> Result<()> {
    let leaf = tree
        .leaf_containing(probe)
        .ok_or_else(|| Error::ConstructionFailed("no piece contains the next cut".into()))?;
    tree.split(leaf, cut)
}

fn fan_division(c: &ConvexPolygon, set: &DiameterSegmentSet, n: usize) -> Result<DivisionTree> {
    let m = c.len();
    let v = set.apex.expect("fan has an apex");
    let o = c.vertex(v);
    let base = Direction::from_vector(c.vertex((v + 1) % m) - o).angle();
    let rel = |p: Point2| (Direction::from_vector(p - o).angle() - base).rem_euclid(2.0 * PI);
    let opening = rel(c.vertex((v + m - 1) % m));
    let mut interior: Vec<f64> = Vec::new();
    let mut low_boundary = false;
    let mut high_boundary = false;
    for s in &set.segments {
        let other = if s.ends.0 == v { s.ends.1 } else { s.ends.0 };
        match s.location {
            SegmentLocation::Interior => interior.push(rel(c.vertex(other))),
            SegmentLocation::Boundary if other == (v + 1) % m => low_boundary = true,
            SegmentLocation::Boundary => high_boundary = true,
        }
    }
    interior.sort_by(f64::total_cmp);
    // (relative angle, is a bisector)
    let mut rays: Vec<(f64, bool)> = interior.iter().map(|&a| (a, false)).collect();
    for w in interior.windows(2) {
        rays.push((0.5 * (w[0] + w[1]), true));
    }
    match (interior.first(), interior.last()) {
        (Some(&first), Some(&last)) => {
            if low_boundary {
                rays.push((0.5 * first, true));
            }
            if high_boundary {
                rays.push((0.5 * (last + opening), true));
            }
        }
        _ => {
            if low_boundary && high_boundary {
                rays.push((0.5 * opening, true));
            }
        }
    }
    if rays.len() + 1 < n {
        return Err(Error::InfeasibleN { n, max_n: rays.len() + 1 });
    }
    while rays.len() + 1 > n {
        let drop = rays.iter().rposition(|r| r.1).unwrap_or(rays.len() - 1);
        rays.remove(drop);
    }
    rays.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut tree = DivisionTree::new(c.clone());
    for &(angle, _) in &rays {
        let cut = line_at(o, base + angle);
        let (p, q) = c.chord(&cut).ok_or(Error::CutMissesInterior)?;
        let far = if p.dist(o) > q.dist(o) { p } else { q };
        split_at_point(&mut tree, o.lerp(far, 0.5), cut)?;
    }
    Ok(tree)
}

fn triangle_division(c: &ConvexPolygon, set: &DiameterSegmentSet, n: usize) -> Result<DivisionTree> {
    let ids: BTreeSet<usize> = set.segments.iter().flat_map(|s| [s.ends.0, s.ends.1]).collect();
    let ids: Vec<usize> = ids.into_iter().collect();
    let [i, j, k] = ids[..] else {
        return Err(Error::ConstructionFailed("triangle family needs three vertices".into()));
    };
    let (pi, pj, pk) = (c.vertex(i), c.vertex(j), c.vertex(k));
    let centroid = (pi + pj + pk) * (1.0 / 3.0);
    let mut tree = DivisionTree::new(c.clone());
    let caps: Vec<&DiameterSegment> =
        set.segments.iter().filter(|s| s.location == SegmentLocation::Interior).collect();
    let cap_cuts = caps.len().min(n - 1);
    for s in &caps[..cap_cuts] {
        let cut = LineCut::through_points(c.vertex(s.ends.0), c.vertex(s.ends.1));
        split_at_point(&mut tree, centroid, cut)?;
    }
    if n == caps.len() + 2 {
        let cut = LineCut::through_points(pi, pj.lerp(pk, 0.5));
        split_at_point(&mut tree, pi.lerp(pj, 0.5).lerp(centroid, 0.5), cut)?;
    }
    Ok(tree)
}

/// Division with all `n` pieces of diameter `D(C)`, built from the family of
/// diameter segments of largest capacity.
pub fn maxmin_diameter_division(c: &ConvexPolygon, n: usize) -> Result<DivisionTree> {
    check_n(n)?;
    let (feas, set) = maxmin_diameter_feasible(c, n);
    if !feas.feasible {
        return Err(Error::InfeasibleN { n, max_n: feas.max_n });
    }
    let tree = match set.kind {
        SetKind::Fan => fan_division(c, &set, n)?,
        SetKind::Triangle => triangle_division(c, &set, n)?,
    };
    let d = c.diameter().value;
    if tree.leaf_count() != n {
        return Err(Error::ConstructionFailed(format!("built {} pieces instead of {n}", tree.leaf_count())));
    }
    for (idx, leaf) in tree.leaves().iter().enumerate() {
        let ld = leaf.diameter();
        if (ld - d).abs() > 1e-7 * d {
            return Err(Error::ConstructionFailed(format!("piece {idx} has diameter {ld}, expected {d}")));
        }
    }
    Ok(tree)
}

pub fn maxmin_diameter_solve(c: &ConvexPolygon, n: usize) -> Result<SolveReport> {
    let division = maxmin_diameter_division(c, n)?;
    let (feasibility, _) = maxmin_diameter_feasible(c, n);
    let per = division.leaf_values(Magnitude::Diameter)?;
    Ok(SolveReport {
        objective: Objective::MaxMin,
        magnitude: Magnitude::Diameter,
        n,
        value: maxmin_diameter_value(c),
        balanced: is_balanced(&per, 1e-7),
        division,
        per_subset_values: per,
        tolerance: 1e-7,
        feasibility: Some(feasibility),
        diagnostics: BTreeMap::new(),
    })
}

/// `w/n <= w̃_n(C) <= min(w, D/2)`.
pub fn maxmin_width_bounds(c: &ConvexPolygon, n: usize) -> Result<BoundsReport> {
    check_n(n)?;
    let w = c.width().value;
    let d = c.diameter().value;
    Ok(BoundsReport { lower: w / n as f64, lower_strict: false, upper: w.min(d / 2.0), witness: None, mesh_tuple: None })
}

/// Best balanced width cut found by a direction scan with golden-section refinement.
#[derive(Debug, Clone)]
pub struct WidthSearch {
    pub value: f64,
    pub cut: LineCut,
    pub left_value: f64,
    pub right_value: f64,
    pub evaluations: usize,
}

fn balanced_width(body: &Body, phi: f64, tol: f64) -> Result<(f64, LineCut, f64, f64)> {
    let b = balance(body, Direction::from_angle(phi), |p| p.width(), tol)?;
    Ok((b.left_value.min(b.right_value), b.cut, b.left_value, b.right_value))
}

pub fn maxmin_width_2_search(body: &Body, tol: f64, samples: usize) -> Result<WidthSearch> {
    if samples < 3 {
        return Err(Error::InvalidArgument("at least 3 direction samples are needed".into()));
    }
    let step = PI / samples as f64;
    let mut values = Vec::with_capacity(samples);
    let mut best = (f64::NEG_INFINITY, 0usize, None);
    for i in 0..samples {
        let r = balanced_width(body, i as f64 * step, tol)?;
        values.push(r.0);
        if r.0 > best.0 {
            best = (r.0, i, Some(r));
        }
    }
    let mut evaluations = samples;
    let (_, i, found) = best;
    let mut found = found.expect("at least one direction");
    let phi = i as f64 * step;
    let (mut a, mut b) = (phi - step, phi + step);
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let mut x1 = b - g * (b - a);
    let mut x2 = a + g * (b - a);
    let mut f1 = balanced_width(body, x1, tol)?;
    let mut f2 = balanced_width(body, x2, tol)?;
    evaluations += 2;
    while b - a > ANGLE_TOL {
        if f1.0 >= f2.0 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - g * (b - a);
            f1 = balanced_width(body, x1, tol)?;
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + g * (b - a);
            f2 = balanced_width(body, x2, tol)?;
        }
        evaluations += 1;
        if evaluations > samples + BALANCE_BUDGET {
            return Err(Error::ToleranceNotReached { tol: ANGLE_TOL, iterations: evaluations - samples });
        }
    }
    for cand in [f1, f2] {
        if cand.0 > found.0 {
            found = cand;
        }
    }
    Ok(WidthSearch { value: found.0, cut: found.1, left_value: found.2, right_value: found.3, evaluations })
}

/// Max-min width for two pieces. The optimal 2-division is balanced, so each
/// direction is represented by its balanced cut.
pub fn maxmin_width_2_solve(body: &Body, tol: f64) -> Result<SolveReport> {
    let search = maxmin_width_2_search(body, tol, DIRECTION_SAMPLES)?;
    let mut division = DivisionTree::new(body.clone());
    division.split(0, search.cut)?;
    let per = vec![search.left_value, search.right_value];
    let w = body.width()?;
    let mut diagnostics = BTreeMap::new();
    diagnostics.insert("width".to_string(), w);
    diagnostics.insert("diameter".to_string(), body.diameter());
    diagnostics.insert("evaluations".to_string(), search.evaluations as f64);
    Ok(SolveReport {
        objective: Objective::MaxMin,
        magnitude: Magnitude::Width,
        n: 2,
        value: search.value,
        division,
        balanced: (per[0] - per[1]).abs() <= tol * w,
        per_subset_values: per,
        tolerance: tol,
        feasibility: None,
        diagnostics,
    })
}

/// `Ĩ_n(C) >= I(C)/n`.
pub fn maxmin_inradius_bound(c: &ConvexPolygon, n: usize) -> Result<f64> {
    check_n(n)?;
    Ok(c.inradius().value / n as f64)
}

/// Max-min inradius for two pieces: the fixed point `2ρ = w̃₂(C^ρ)`,
/// bracketed in `[I/2, I]`.
pub fn maxmin_inradius_2_solve(c: &ConvexPolygon, tol: f64) -> Result<SolveReport> {
    let axis = MedialAxis::new(c);
    let inradius = axis.inradius();
    let inner = 0.1 * tol;
    let eval = |rho: f64| -> Result<(f64, WidthSearch)> {
        let body: Body = axis.rounded_body(rho)?.into();
        let s = maxmin_width_2_search(&body, inner, DIRECTION_SAMPLES)?;
        Ok((s.value - 2.0 * rho, s))
    };
    let (mut a, mut b) = (0.5 * inradius, inradius);
    let (mut fa, sa) = eval(a)?;
    let (mut fb, sb) = eval(b)?;
    if fa < -tol * inradius {
        return Err(Error::VerificationFailed(format!("fixed-point function negative at I/2: {fa:e}")));
    }
    let mut best = if fa.abs() <= fb.abs() { (a, fa, sa) } else { (b, fb, sb) };
    let mut last_side = 0i8;
    let mut iterations = 0;
    while best.1.abs() > tol * inradius {
        iterations += 1;
        if iterations > BALANCE_BUDGET {
            return Err(Error::ToleranceNotReached { tol, iterations });
        }
        let mut rho = (a * fb - b * fa) / (fb - fa);
        if !(rho > a && rho < b) || iterations % 8 == 0 {
            rho = 0.5 * (a + b);
        }
        let (fr, sr) = eval(rho)?;
        if fr.abs() < best.1.abs() {
            best = (rho, fr, sr.clone());
        }
        if fr > 0.0 {
            a = rho;
            fa = fr;
            if last_side == 1 {
                fb *= 0.5;
            }
            last_side = 1;
        } else {
            b = rho;
            fb = fr;
            if last_side == -1 {
                fa *= 0.5;
            }
            last_side = -1;
        }
        if b - a <= 1e-15 * inradius {
            break;
        }
    }
    let (rho, residual, search) = best;
    if residual.abs() > tol * inradius {
        return Err(Error::ToleranceNotReached { tol, iterations });
    }
    let mut division = DivisionTree::new(c.clone());
    division.split(0, search.cut)?;
    let per = division.leaf_values(Magnitude::Inradius)?;
    let mut diagnostics = BTreeMap::new();
    diagnostics.insert("inradius".to_string(), inradius);
    diagnostics.insert("residual".to_string(), residual);
    diagnostics.insert("rounded_maxmin_width".to_string(), search.value);
    diagnostics.insert("iterations".to_string(), iterations as f64);
    Ok(SolveReport {
        objective: Objective::MaxMin,
        magnitude: Magnitude::Inradius,
        n: 2,
        value: rho,
        balanced: is_balanced(&per, tol.max(1e-9)),
        division,
        per_subset_values: per,
        tolerance: tol,
        feasibility: None,
        diagnostics,
    })
}
