use proptest::prelude::*;

use convex_division::corpus::random_polygon;
use convex_division::geometry::{Body, ConvexPolygon, Direction, LineCut, Magnitude, WIDTH_ARC_TOL};
use convex_division::io::{PolygonDocument, ReportDocument};
use convex_division::medial::MedialAxis;
use convex_division::minmax::{conway_solve, minmax_width_solve};
use convex_division::oracle::random_division;

fn polygon() -> impl Strategy<Value = ConvexPolygon> {
    any::<u64>().prop_map(random_polygon)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn breadth_dominates_width(c in polygon(), theta in 0.0..std::f64::consts::TAU) {
        let w = c.width().value;
        prop_assert!(c.breadth(Direction::from_angle(theta)) >= w * (1.0 - 1e-12));
        prop_assert!(c.diameter().value >= w);
        prop_assert!(2.0 * c.inradius().value <= w * (1.0 + 1e-12));
    }

    #[test]
    fn clipping_preserves_area(c in polygon(), theta in 0.0..std::f64::consts::TAU, s in 0.05..0.95f64) {
        let dir = Direction::from_angle(theta);
        let lo = -c.support(dir.opposite());
        let hi = c.support(dir);
        let cut = LineCut::new(dir, lo + s * (hi - lo));
        let (l, r) = c.clip(&cut).unwrap();
        prop_assert!((l.area() + r.area() - c.area()).abs() <= 1e-12 * c.area().max(1.0));
        prop_assert!(l.diameter().value <= c.diameter().value + 1e-12);
        prop_assert!(r.inradius().value <= c.inradius().value + 1e-12);
    }

    #[test]
    fn bang_and_kadets(c in polygon(), n in 2usize..6, seed in any::<u64>()) {
        let t = random_division(&Body::from(c.clone()), n, seed).unwrap();
        let widths: f64 = t.leaf_values(Magnitude::Width).unwrap().iter().sum();
        let radii: f64 = t.leaf_values(Magnitude::Inradius).unwrap().iter().sum();
        prop_assert!(widths >= c.width().value - 1e-9);
        prop_assert!(radii >= c.inradius().value - 1e-9);
    }

    #[test]
    fn minmax_width_is_balanced(c in polygon(), n in 2usize..9) {
        let r = minmax_width_solve(&c, n).unwrap();
        prop_assert!((r.value - c.width().value / n as f64).abs() <= 1e-12 * c.width().value);
        for v in &r.per_subset_values {
            prop_assert!((v - r.value).abs() <= 1e-9);
        }
    }

    #[test]
    fn conway_lower_bound_and_replay(c in polygon(), n in 2usize..5) {
        let r = conway_solve(&c, n).unwrap();
        prop_assert!(r.value >= c.inradius().value / n as f64 * (1.0 - 1e-12));
        let doc = ReportDocument::from_solve(&r);
        let back = ReportDocument::parse(&doc.to_json()).unwrap();
        prop_assert_eq!(&back, &doc);
        let replayed = back.replay(c.clone()).unwrap().leaf_values(Magnitude::Inradius).unwrap();
        for (a, b) in replayed.iter().zip(&r.per_subset_values) {
            prop_assert!((a - b).abs() <= 1e-9);
        }
    }

    #[test]
    fn relative_width_matches_rounded_body(c in polygon(), side in 0usize..12, t in 0.0..1.0f64) {
        let axis = MedialAxis::new(&c);
        let side = side % c.len();
        let rho = t * axis.inradius();
        let f = axis.relative_width_function(side).unwrap();
        let direct = axis.relative_width(side, rho).unwrap();
        prop_assert!((f.eval(rho) - direct).abs() <= 1e-9 * c.diagonal().max(1.0));
    }

    #[test]
    fn rounded_bodies_are_nested(c in polygon(), t1 in 0.0..1.0f64, t2 in 0.0..1.0f64) {
        let axis = MedialAxis::new(&c);
        let i = axis.inradius();
        let (small, large) = (t1.max(t2) * i, t1.min(t2) * i);
        let inner = axis.rounded_body(small).unwrap();
        let outer = axis.rounded_body(large).unwrap();
        for p in inner.sample_boundary(8) {
            for k in 0..64 {
                let u = Direction::from_angle(k as f64 * std::f64::consts::TAU / 64.0);
                prop_assert!(p.dot(u.unit()) <= outer.support(u) + 1e-9);
            }
        }
        prop_assert!(inner.width_arc(WIDTH_ARC_TOL).unwrap() <= outer.width_arc(WIDTH_ARC_TOL).unwrap() + 1e-9);
    }

    #[test]
    fn polygon_documents_round_trip(c in polygon()) {
        let doc = PolygonDocument::from_polygon("p", &c);
        let back = PolygonDocument::parse(&doc.to_json()).unwrap();
        prop_assert_eq!(back.polygon().unwrap(), c);
    }
}
