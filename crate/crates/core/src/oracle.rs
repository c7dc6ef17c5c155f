//! Brute-force references for two- and three-piece divisions.
//!
//! These searches use nothing but the geometry kernel so that they stay
//! independent of the solvers they check.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::division::DivisionTree;
use crate::error::{Error, Result};
use crate::geometry::{Body, Direction, LineCut, Magnitude};
use crate::report::Objective;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchGrid {
    pub angle_samples: usize,
    pub offset_samples: usize,
    pub refine_rounds: usize,
    pub seed: u64,
}

impl Default for SearchGrid {
    fn default() -> Self {
        SearchGrid { angle_samples: 360, offset_samples: 200, refine_rounds: 3, seed: 0 }
    }
}

impl SearchGrid {
    fn check(&self) -> Result<()> {
        if self.angle_samples == 0 || self.offset_samples == 0 {
            return Err(Error::InvalidArgument("search grid sizes must be positive".into()));
        }
        Ok(())
    }
}

/// The two pieces of `body` cut with normal angle `theta` at fraction `s`
/// of its extent, or `None` when the cut misses.
fn cut_at(body: &Body, theta: f64, s: f64) -> Result<Option<(LineCut, Body, Body)>> {
    let dir = Direction::from_angle(theta);
    let (lo, hi) = body.extent(dir);
    let cut = LineCut::new(dir, lo + s * (hi - lo));
    match body.clip(&cut) {
        Ok((l, r)) => Ok(Some((cut, l, r))),
        Err(Error::CutMissesInterior) => Ok(None),
        Err(e) => Err(e),
    }
}

fn two_piece_value(body: &Body, m: Magnitude, obj: Objective, theta: f64, s: f64) -> Result<(f64, Option<LineCut>)> {
    if !(s > 0.0 && s < 1.0) {
        return Ok((obj.worst(), None));
    }
    Ok(match cut_at(body, theta, s)? {
        Some((cut, l, r)) => (obj.combine(&[l.magnitude(m)?, r.magnitude(m)?]), Some(cut)),
        None => (obj.worst(), None),
    })
}

/// Best two-piece division. For each sampled cut direction the offset sits
/// where the two piece values cross (each piece value is monotone in the
/// offset, since the pieces are nested); the direction is then refined by a
/// shrinking pattern search from the three best samples.
///
/// `grid.offset_samples` is not used: the offset is found by root finding.
pub fn brute_2division(body: &Body, m: Magnitude, obj: Objective, grid: &SearchGrid) -> Result<(f64, LineCut)> {
    grid.check()?;
    let step = PI / grid.angle_samples as f64;
    let sides = |l: &Body, r: &Body| Ok((l.magnitude(m)?, r.magnitude(m)?));
    let at = |theta: f64| crossing(body, theta, obj, &sides);
    let mut samples = Vec::with_capacity(grid.angle_samples);
    for i in 0..grid.angle_samples {
        let theta = i as f64 * step;
        samples.push((at(theta)?.0, theta));
    }
    samples.sort_by(|a, b| match obj {
        Objective::MinMax => a.0.total_cmp(&b.0),
        Objective::MaxMin => b.0.total_cmp(&a.0),
    });
    let mut best: Option<(f64, f64)> = None;
    for &(v0, t0) in samples.iter().take(3) {
        let (mut v, mut theta) = (v0, t0);
        let mut h = step;
        let mut rounds = 0;
        while h > 1e-11 && rounds < 60 * grid.refine_rounds.max(1) {
            rounds += 1;
            let mut moved = false;
            for t in [theta - h, theta + h] {
                let (cand, _) = at(t)?;
                if obj.better(cand, v) {
                    (v, theta) = (cand, t);
                    moved = true;
                }
            }
            if !moved {
                h *= 0.5;
            }
        }
        if best.is_none_or(|b| obj.better(v, b.0)) {
            best = Some((v, theta));
        }
    }
    let (_, theta) = best.ok_or(Error::CutMissesInterior)?;
    let (v, s) = at(theta)?;
    let (_, cut) = two_piece_value(body, m, obj, theta, s)?;
    Ok((v, cut.ok_or(Error::CutMissesInterior)?))
}

/// Offset in `body`'s extent along `theta` where `inc(left) = dec(right)`,
/// assuming the left value grows and the right value shrinks with the
/// offset. Returns the objective value of the two sides there.
fn crossing(
    body: &Body,
    theta: f64,
    obj: Objective,
    side_values: &dyn Fn(&Body, &Body) -> Result<(f64, f64)>,
) -> Result<(f64, f64)> {
    let (mut a, mut b) = (0.0f64, 1.0f64);
    let (mut fa, mut fb) = (-1.0f64, 1.0f64);
    let mut last = 0i8;
    let mut best = (obj.worst(), 0.5);
    for it in 0..60 {
        let mut s = (a * fb - b * fa) / (fb - fa);
        if !(s > a && s < b) || it % 6 == 5 {
            s = 0.5 * (a + b);
        }
        let Some((_, l, r)) = cut_at(body, theta, s)? else {
            if s < 0.5 {
                a = s;
            } else {
                b = s;
            }
            continue;
        };
        let (lv, rv) = side_values(&l, &r)?;
        let v = obj.combine(&[lv, rv]);
        if obj.better(v, best.0) {
            best = (v, s);
        }
        let d = lv - rv;
        let scale = lv.abs().max(rv.abs()).max(f64::MIN_POSITIVE);
        if d.abs() <= 1e-13 * scale || b - a < 1e-13 {
            break;
        }
        if d < 0.0 {
            (a, fa) = (s, d);
            if last == -1 {
                fb *= 0.5;
            }
            last = -1;
        } else {
            (b, fb) = (s, d);
            if last == 1 {
                fa *= 0.5;
            }
            last = 1;
        }
    }
    Ok(best)
}

/// Value of the best three-piece division whose first cut has normal
/// `theta1` (the piece on the far side is split again) and whose second cut
/// has normal `theta2`. Offsets sit where the monotone piece values cross.
fn three_piece_value(body: &Body, m: Magnitude, obj: Objective, theta1: f64, theta2: f64) -> Result<f64> {
    let inner = |piece: &Body| -> Result<f64> {
        let f = |l: &Body, r: &Body| Ok((l.magnitude(m)?, r.magnitude(m)?));
        Ok(crossing(piece, theta2, obj, &f)?.0)
    };
    let outer = |l: &Body, r: &Body| Ok((l.magnitude(m)?, inner(r)?));
    Ok(crossing(body, theta1, obj, &outer)?.0)
}

/// Best three-piece division by successive cuts: a scan over both cut
/// directions with offsets placed where the piece values cross, refined by
/// a shrinking pattern search from the three best grid cells.
///
/// Offsets are located by root finding on the monotone piece values, so
/// `grid.offset_samples` is not used here.
pub fn brute_3division(body: &Body, m: Magnitude, obj: Objective, grid: &SearchGrid) -> Result<f64> {
    grid.check()?;
    let na = grid.angle_samples;
    let step = PI / na as f64;
    let mut cells = Vec::with_capacity(2 * na * na);
    for i in 0..2 * na {
        for j in 0..na {
            let (t1, t2) = (i as f64 * step, j as f64 * step);
            cells.push((three_piece_value(body, m, obj, t1, t2)?, t1, t2));
        }
    }
    cells.sort_by(|a, b| match obj {
        Objective::MinMax => a.0.total_cmp(&b.0),
        Objective::MaxMin => b.0.total_cmp(&a.0),
    });
    let mut best = obj.worst();
    for &(v0, t1, t2) in cells.iter().take(3) {
        let (mut v, mut c1, mut c2) = (v0, t1, t2);
        let mut h = step;
        let mut rounds = 0;
        while h > 1e-7 && rounds < 40 * grid.refine_rounds.max(1) {
            rounds += 1;
            let mut moved = false;
            for (di, dj) in [(-1, -1), (-1, 0), (-1, 1), (0, -1), (0, 1), (1, -1), (1, 0), (1, 1)] {
                let (a, b) = (c1 + di as f64 * h, c2 + dj as f64 * h);
                let cand = three_piece_value(body, m, obj, a, b)?;
                if obj.better(cand, v) {
                    (v, c1, c2) = (cand, a, b);
                    moved = true;
                }
            }
            if !moved {
                h *= 0.5;
            }
        }
        if obj.better(v, best) {
            best = v;
        }
    }
    Ok(best)
}

/// `n - 1` random successive cuts, reproducible from `seed`.
pub fn random_division(body: &Body, n: usize, seed: u64) -> Result<DivisionTree> {
    if n < 1 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tree = DivisionTree::new(body.clone());
    let min_area = 1e-6 * body.area();
    let mut attempts = 0;
    while tree.leaf_count() < n {
        attempts += 1;
        if attempts > 1000 * n {
            return Err(Error::ConstructionFailed("could not place random cuts".into()));
        }
        let leaf = rng.gen_range(0..tree.leaf_count());
        let theta = rng.gen_range(0.0..2.0 * PI);
        let s = rng.gen_range(0.1..0.9);
        let target = &tree.leaves()[leaf];
        let Some((cut, l, r)) = cut_at(target, theta, s)? else { continue };
        if l.area() < min_area || r.area() < min_area {
            continue;
        }
        tree.split(leaf, cut)?;
    }
    Ok(tree)
}
