//! Named test shapes and seeded random polygons.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::geometry::{ConvexPolygon, Point2};

/// Seed of the bundled random polygons.
pub const CORPUS_SEED: u64 = 20_240_601;
pub const RANDOM_COUNT: usize = 20;

#[derive(Debug, Clone, PartialEq)]
pub struct NamedPolygon {
    pub name: String,
    pub polygon: ConvexPolygon,
}

impl NamedPolygon {
    fn new(name: impl Into<String>, polygon: ConvexPolygon) -> Self {
        NamedPolygon { name: name.into(), polygon }
    }
}

pub fn equilateral_triangle(side: f64) -> ConvexPolygon {
    ConvexPolygon::new(&[
        Point2::new(0.0, 0.0),
        Point2::new(side, 0.0),
        Point2::new(side / 2.0, side * 3f64.sqrt() / 2.0),
    ])
    .expect("valid triangle")
}

/// Isosceles triangle with base 4 and legs 5.
pub fn isosceles_4_5_5() -> ConvexPolygon {
    ConvexPolygon::new(&[Point2::new(-2.0, 0.0), Point2::new(2.0, 0.0), Point2::new(0.0, 21f64.sqrt())])
        .expect("valid triangle")
}

/// Regular `k`-gon inscribed in the unit circle.
pub fn regular(k: usize) -> ConvexPolygon {
    ConvexPolygon::regular(k, Point2::default(), 1.0, 0.0).expect("valid regular polygon")
}

/// `k` points on a random ellipse, at random angles at least 0.05 rad apart.
pub fn random_polygon(seed: u64) -> ConvexPolygon {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = rng.gen_range(3..=12);
    let (a, b) = (rng.gen_range(0.6..1.4), rng.gen_range(0.6..1.4));
    let rot = rng.gen_range(0.0..PI);
    let center = Point2::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
    loop {
        let mut angles: Vec<f64> = (0..k).map(|_| rng.gen_range(0.0..2.0 * PI)).collect();
        angles.sort_by(f64::total_cmp);
        let wrap = angles[0] + 2.0 * PI - angles[k - 1];
        if angles.windows(2).any(|w| w[1] - w[0] < 0.05) || wrap < 0.05 {
            continue;
        }
        let (s, c) = rot.sin_cos();
        let pts: Vec<Point2> = angles
            .iter()
            .map(|t| {
                let (x, y) = (a * t.cos(), b * t.sin());
                center + Point2::new(c * x - s * y, s * x + c * y)
            })
            .collect();
        if let Ok(p) = ConvexPolygon::new(&pts) {
            if p.len() == k {
                return p;
            }
        }
    }
}

pub fn random_corpus(count: usize, seed: u64) -> Vec<NamedPolygon> {
    (0..count)
        .map(|i| NamedPolygon::new(format!("random-{i:02}"), random_polygon(seed.wrapping_add(i as u64))))
        .collect()
}

pub fn named_shapes() -> Vec<NamedPolygon> {
    let mut out = vec![
        NamedPolygon::new("square", ConvexPolygon::rectangle(1.0, 1.0).expect("square")),
        NamedPolygon::new("rectangle-1x3", ConvexPolygon::rectangle(3.0, 1.0).expect("rectangle")),
        NamedPolygon::new("rectangle-1x10", ConvexPolygon::rectangle(10.0, 1.0).expect("rectangle")),
        NamedPolygon::new("triangle-equilateral", equilateral_triangle(1.0)),
        NamedPolygon::new("triangle-4-5-5", isosceles_4_5_5()),
    ];
    for k in 5..=12 {
        out.push(NamedPolygon::new(format!("regular-{k}"), regular(k)));
    }
    out.push(NamedPolygon::new("disk-256", regular(256)));
    out
}

/// Named shapes followed by the seeded random polygons.
pub fn standard_corpus() -> Vec<NamedPolygon> {
    let mut out = named_shapes();
    out.extend(random_corpus(RANDOM_COUNT, CORPUS_SEED));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_polygons_are_reproducible() {
        let a = random_corpus(20, 7);
        assert_eq!(a, random_corpus(20, 7));
        for p in &a {
            assert!((3..=12).contains(&p.polygon.len()));
        }
    }
}
