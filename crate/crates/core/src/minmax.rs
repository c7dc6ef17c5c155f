//! min-Max solvers: width (exact), inradius (Conway's problem) and
//! diameter (bounds with a mesh witness).

use std::collections::BTreeMap;

use crate::division::DivisionTree;
use crate::error::{Error, Result};
use crate::geometry::{Body, ConvexPolygon, Direction, LineCut, Magnitude, OrthogonalWidths};
use crate::medial::MedialAxis;
use crate::report::{is_balanced, BoundsReport, Objective, SolveReport};

/// Iteration budget for one-dimensional balancing searches.
pub const BALANCE_BUDGET: usize = 200;

pub(crate) fn check_n(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("n must be at least 2, got {n}")));
    }
    Ok(())
}

/// Cuts with normal `dir` at the given increasing offsets, each one applied
/// to the leaf holding the part beyond the previous cut.
fn parallel_division(body: Body, dir: Direction, offsets: &[f64]) -> Result<DivisionTree> {
    let mut tree = DivisionTree::new(body);
    for (k, &t) in offsets.iter().enumerate() {
        tree.split(k, LineCut::new(dir, t))?;
    }
    Ok(tree)
}

pub fn minmax_width_solve(c: &ConvexPolygon, n: usize) -> Result<SolveReport> {
    check_n(n)?;
    let w = c.width();
    let value = w.value / n as f64;
    let offsets: Vec<f64> = (1..n).map(|k| w.slab.low + k as f64 * value).collect();
    let division = parallel_division(c.clone().into(), w.slab.normal, &offsets)?;
    let per = division.leaf_values(Magnitude::Width)?;
    let balanced = is_balanced(&per, 1e-9);
    let mut diagnostics = BTreeMap::new();
    diagnostics.insert("width".to_string(), w.value);
    diagnostics.insert("supporting_edge".to_string(), w.edge as f64);
    Ok(SolveReport {
        objective: Objective::MinMax,
        magnitude: Magnitude::Width,
        n,
        value,
        division,
        per_subset_values: per,
        balanced,
        tolerance: 1e-9,
        feasibility: None,
        diagnostics,
    })
}

/// Conway's problem: the unique `ρ̃` with `w(C^ρ̃) = 2nρ̃`, found as the
/// smallest per-side root of `w_L(C^ρ) = 2nρ`.
pub fn conway_solve(c: &ConvexPolygon, n: usize) -> Result<SolveReport> {
    check_n(n)?;
    let axis = MedialAxis::new(c);
    let inradius = axis.inradius();
    let mut best: Option<(usize, f64)> = None;
    for side in 0..c.len() {
        let f = axis.relative_width_function(side)?;
        let rho = match axis.solve_side_equation(side, n, &f) {
            Ok(r) => r,
            Err(Error::NoRootInRange { .. }) => continue,
            Err(e) => return Err(e),
        };
        if best.is_none_or(|(_, b)| rho < b - 1e-12 * inradius) {
            best = Some((side, rho));
        }
    }
    let (side, rho) = best.ok_or_else(|| Error::VerificationFailed("no side equation has a root".into()))?;
    let target = 2.0 * n as f64 * rho;
    let rounded = axis.rounded_body(rho)?;
    let width = rounded.width_arc(crate::geometry::WIDTH_ARC_TOL)?;
    if (width - target).abs() > 1e-8 * target {
        return Err(Error::VerificationFailed(format!(
            "w(C^rho) = {width} but 2 n rho = {target}"
        )));
    }
    if rho < inradius / n as f64 * (1.0 - 1e-9) {
        return Err(Error::VerificationFailed(format!("rho {rho} below I/n = {}", inradius / n as f64)));
    }
    let dir = c.edge_normal(side);
    let low = -rounded.support(dir.opposite());
    let offsets: Vec<f64> = (1..n).map(|k| low + 2.0 * k as f64 * rho).collect();
    let division = parallel_division(c.clone().into(), dir, &offsets)?;
    let per = division.leaf_values(Magnitude::Inradius)?;
    if per.iter().any(|&r| (r - rho).abs() > 1e-8 * rho) {
        return Err(Error::VerificationFailed(format!("leaf inradii {per:?} differ from {rho}")));
    }
    let balanced = is_balanced(&per, 1e-8);
    let mut diagnostics = BTreeMap::new();
    diagnostics.insert("inradius".to_string(), inradius);
    diagnostics.insert("side".to_string(), side as f64);
    diagnostics.insert("rounded_width".to_string(), width);
    diagnostics.insert("residual".to_string(), width - target);
    Ok(SolveReport {
        objective: Objective::MinMax,
        magnitude: Magnitude::Inradius,
        n,
        value: rho,
        division,
        per_subset_values: per,
        balanced,
        tolerance: 1e-8,
        feasibility: None,
        diagnostics,
    })
}

fn tuples(d: usize, n: usize, min: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if prefix.len() == d {
        out.push(prefix.clone());
        return;
    }
    let used: usize = prefix.iter().product();
    let remaining = d - prefix.len();
    let mut a = min;
    while used * a.pow(remaining as u32) <= n {
        prefix.push(a);
        tuples(d, n, a, prefix, out);
        prefix.pop();
        a += 1;
    }
}

/// `D/n < D_n(C) <= min(D, sqrt(Σ w_i² / a_i²))` over nondecreasing tuples
/// with `Π a_i <= n`.
pub fn minmax_diameter_bounds(widths: &OrthogonalWidths, diameter: f64, n: usize) -> Result<BoundsReport> {
    check_n(n)?;
    let w = widths.as_slice();
    let last = w[w.len() - 1];
    if !(diameter >= last * (1.0 - 1e-12)) {
        return Err(Error::InvalidArgument(format!("diameter {diameter} below largest width {last}")));
    }
    let mut all = Vec::new();
    tuples(w.len(), n, 1, &mut Vec::new(), &mut all);
    let mesh = |t: &[usize]| w.iter().zip(t).map(|(wi, &a)| (wi / a as f64).powi(2)).sum::<f64>().sqrt();
    let mut best = (f64::INFINITY, Vec::new());
    for t in all {
        let v = mesh(&t);
        if v < best.0 {
            best = (v, t);
        }
    }
    Ok(BoundsReport {
        lower: diameter / n as f64,
        lower_strict: true,
        upper: best.0.min(diameter),
        witness: None,
        mesh_tuple: Some(best.1),
    })
}

/// Mesh division for the tuple `(a1, a2)`: `a1` equal strips across the
/// width slab, then each strip cut into `a2` equal bands of its own extent
/// in the perpendicular direction, so every cell fits in a
/// `w1/a1 × w2/a2` box. Cuts missing the current piece are skipped.
pub fn minmax_diameter_mesh_division(body: &Body, tuple: (usize, usize)) -> Result<DivisionTree> {
    let (a1, a2) = tuple;
    if a1 == 0 || a2 == 0 {
        return Err(Error::InvalidArgument("mesh tuple entries must be positive".into()));
    }
    let (_, u1) = body.width_with_direction()?;
    let u2 = u1.perpendicular();
    let mut tree = DivisionTree::new(body.clone());
    let strips = slice(&mut tree, 0, u1, a1)?;
    for idx in (0..strips).rev() {
        slice(&mut tree, idx, u2, a2)?;
    }
    Ok(tree)
}

/// Cuts leaf `idx` into up to `parts` equal bands of the leaf's extent
/// along `dir`; the bands occupy leaves `idx..idx + count`, and `count` is returned.
fn slice(tree: &mut DivisionTree, idx: usize, dir: Direction, parts: usize) -> Result<usize> {
    let (lo, hi) = tree.leaves()[idx].extent(dir);
    let step = (hi - lo) / parts as f64;
    let mut current = idx;
    let mut made = 1;
    for k in 1..parts {
        match tree.split(current, LineCut::new(dir, lo + k as f64 * step)) {
            Ok(()) => {
                current += 1;
                made += 1;
            }
            Err(Error::CutMissesInterior) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(made)
}

/// Full min-Max diameter report for a polygon: planar bounds plus the mesh
/// witness for the optimal tuple.
pub fn minmax_diameter_report(c: &ConvexPolygon, n: usize) -> Result<BoundsReport> {
    let widths = c.orthogonal_widths();
    let d = c.diameter().value;
    let mut report = minmax_diameter_bounds(&widths, d, n)?;
    if let Some(t) = &report.mesh_tuple {
        report.witness = Some(minmax_diameter_mesh_division(&c.clone().into(), (t[0], t[1]))?);
    }
    Ok(report)
}

/// Result of balancing a magnitude across one cut.
#[derive(Debug, Clone)]
pub struct Balanced {
    pub cut: LineCut,
    pub left: Body,
    pub right: Body,
    pub left_value: f64,
    pub right_value: f64,
}

/// Offset along `dir` where `m(left) = m(right)`, by bracketed false
/// position with the Illinois modification. `m(left)` grows and `m(right)`
/// shrinks as the offset increases.
pub fn balance(body: &Body, dir: Direction, m: impl Fn(&Body) -> Result<f64>, tol: f64) -> Result<Balanced> {
    let total = m(body)?;
    let (lo, hi) = body.extent(dir);
    let (mut a, mut fa, mut b, mut fb) = (lo, -total, hi, total);
    let mut last_side = 0i8;
    let mut best: Option<(f64, Balanced)> = None;
    for it in 0..BALANCE_BUDGET {
        let mut t = (a * fb - b * fa) / (fb - fa);
        if !(t > a && t < b) || it % 8 == 7 {
            t = 0.5 * (a + b);
        }
        let cut = LineCut::new(dir, t);
        let (left, right) = match body.clip(&cut) {
            Ok(p) => p,
            Err(Error::CutMissesInterior) => {
                if t - lo < hi - t {
                    a = t;
                } else {
                    b = t;
                }
                continue;
            }
            Err(e) => return Err(e),
        };
        let (lv, rv) = (m(&left)?, m(&right)?);
        let ft = lv - rv;
        let done = ft.abs() <= tol * total;
        if best.as_ref().is_none_or(|(g, _)| ft.abs() < *g) {
            best = Some((ft.abs(), Balanced { cut, left, right, left_value: lv, right_value: rv }));
        }
        if done || b - a <= 1e-15 * (hi - lo) {
            break;
        }
        if ft < 0.0 {
            a = t;
            fa = ft;
            if last_side == -1 {
                fb *= 0.5;
            }
            last_side = -1;
        } else {
            b = t;
            fb = ft;
            if last_side == 1 {
                fa *= 0.5;
            }
            last_side = 1;
        }
    }
    match best {
        Some((gap, bal)) if gap <= tol * total => Ok(bal),
        _ => Err(Error::ToleranceNotReached { tol, iterations: BALANCE_BUDGET }),
    }
}

/// Cut with normal `dir` balancing `magnitude` between the two pieces
/// within `tol` relative to the magnitude of the whole body.
pub fn balanced_cut(body: &Body, dir: Direction, magnitude: Magnitude, tol: f64) -> Result<LineCut> {
    Ok(balance(body, dir, |b| b.magnitude(magnitude), tol)?.cut)
}
