//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::f64::consts::SQRT_2;
use std::time::Instant;

use convex_division::cli::run;
use convex_division::corpus::{
    equilateral_triangle, random_corpus, regular, standard_corpus, CORPUS_SEED, RANDOM_COUNT,
};
use convex_division::error::Error;
use convex_division::geometry::{Body, ConvexPolygon, Direction, Magnitude, Point2, WIDTH_ARC_TOL};
use convex_division::io::{PolygonDocument, ReportDocument};
use convex_division::maxmin::{
    maxmin_diameter_feasible, maxmin_diameter_solve, maxmin_inradius_2_solve, maxmin_width_2_solve,
    maxmin_width_bounds,
};
use convex_division::medial::{rounded_body, MedialAxis};
use convex_division::minmax::{conway_solve, minmax_diameter_report, minmax_width_solve};
use convex_division::oracle::{brute_2division, brute_3division, random_division, SearchGrid};
use convex_division::report::Objective;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e2s(e: Error) -> String {
    e.to_string()
}

fn three_grid() -> SearchGrid {
    SearchGrid { angle_samples: 12, offset_samples: 1, refine_rounds: 1, seed: 0 }
}

fn minmax_width_exact() -> Outcome {
    let corpus = standard_corpus();
    for p in &corpus {
        let w = p.polygon.width().value;
        for n in 2..=8 {
            let r = minmax_width_solve(&p.polygon, n).map_err(e2s)?;
            let target = w / n as f64;
            ensure((r.value - target).abs() <= 1e-12 * target, || format!("{} n={n}: {} vs {target}", p.name, r.value))?;
            for (k, v) in r.division.leaf_values(Magnitude::Width).map_err(e2s)?.iter().enumerate() {
                ensure((v - r.value).abs() <= 1e-9, || format!("{} n={n} leaf {k}: width {v}", p.name))?;
            }
        }
    }
    Ok(format!("{} bodies, n = 2..8", corpus.len()))
}

fn conway_closed_forms() -> Outcome {
    let tri = equilateral_triangle(1.0);
    let r = tri.inradius().value;
    let mut worst: f64 = 0.0;
    for n in 2..=5 {
        let v = conway_solve(&tri, n).map_err(e2s)?.value;
        let exact = 3.0 * r / (2 * n + 1) as f64;
        worst = worst.max((v - exact).abs());
        ensure((v - exact).abs() <= 1e-9, || format!("triangle n={n}: {v} vs {exact}"))?;
    }
    let body: Body = tri.clone().into();
    let (b2, _) = brute_2division(&body, Magnitude::Inradius, Objective::MinMax, &SearchGrid::default()).map_err(e2s)?;
    ensure((b2 - 3.0 * r / 5.0).abs() <= 1e-4, || format!("triangle oracle n=2: {b2}"))?;
    let b3 = brute_3division(&body, Magnitude::Inradius, Objective::MinMax, &three_grid()).map_err(e2s)?;
    ensure((b3 - 3.0 * r / 7.0).abs() <= 1e-4, || format!("triangle oracle n=3: {b3}"))?;
    let sq = ConvexPolygon::rectangle(1.0, 1.0).map_err(e2s)?;
    for n in 2..=5 {
        let v = conway_solve(&sq, n).map_err(e2s)?.value;
        let exact = 1.0 / (2 * n) as f64;
        worst = worst.max((v - exact).abs());
        ensure((v - exact).abs() <= 1e-9, || format!("square n={n}: {v} vs {exact}"))?;
    }
    Ok(format!("max error {worst:.1e}; triangle oracles {:.1e}, {:.1e}", b2 - 3.0 * r / 5.0, b3 - 3.0 * r / 7.0))
}

fn conway_consistency() -> Outcome {
    let mut worst_residual: f64 = 0.0;
    let mut worst_delta: f64 = 0.0;
    for p in random_corpus(RANDOM_COUNT, CORPUS_SEED) {
        let c = &p.polygon;
        let w = c.width().value;
        let body: Body = c.clone().into();
        for n in [2, 3] {
            let rep = conway_solve(c, n).map_err(e2s)?;
            let rho = rep.value;
            let wr = rounded_body(c, rho).map_err(e2s)?.width_arc(WIDTH_ARC_TOL).map_err(e2s)?;
            let residual = (wr - 2.0 * n as f64 * rho).abs();
            worst_residual = worst_residual.max(residual / w);
            ensure(residual < 1e-8 * w, || format!("{} n={n}: residual {residual:e}", p.name))?;
            ensure(rho >= c.inradius().value / n as f64, || format!("{} n={n}: below I/n", p.name))?;
            let oracle = if n == 2 {
                brute_2division(&body, Magnitude::Inradius, Objective::MinMax, &SearchGrid::default()).map_err(e2s)?.0
            } else {
                brute_3division(&body, Magnitude::Inradius, Objective::MinMax, &three_grid()).map_err(e2s)?
            };
            worst_delta = worst_delta.max((oracle - rho).abs());
            ensure((oracle - rho).abs() <= 1e-4, || format!("{} n={n}: oracle {oracle} vs {rho}", p.name))?;
        }
    }
    Ok(format!("max residual/w {worst_residual:.1e}, max oracle delta {worst_delta:.1e}"))
}

fn minmax_diameter_bounds() -> Outcome {
    let sq = ConvexPolygon::rectangle(1.0, 1.0).map_err(e2s)?;
    let b = minmax_diameter_report(&sq, 7).map_err(e2s)?;
    let exact = 13f64.sqrt() / 6.0;
    ensure((b.upper - exact).abs() <= 1e-15, || format!("upper {} vs {exact}", b.upper))?;
    ensure(b.mesh_tuple.as_deref() == Some(&[2, 3][..]), || format!("tuple {:?}", b.mesh_tuple))?;
    let witness = b.witness.as_ref().ok_or("no mesh witness")?;
    let worst = witness.leaf_values(Magnitude::Diameter).map_err(e2s)?.into_iter().fold(0.0, f64::max);
    ensure(worst <= exact + 1e-9, || format!("witness max diameter {worst}"))?;
    ensure((b.lower - SQRT_2 / 7.0).abs() <= 1e-15 && b.lower < b.upper, || format!("lower {}", b.lower))?;
    let mut ratios = Vec::new();
    for l in [10.0, 100.0] {
        let rect = ConvexPolygon::rectangle(l, 1.0).map_err(e2s)?;
        let b = minmax_diameter_report(&rect, 5).map_err(e2s)?;
        ratios.push(b.upper / b.lower);
    }
    ensure(ratios[1] <= 1.05 && ratios[1] < ratios[0], || format!("ratios {ratios:?}"))?;
    Ok(format!("upper/lower at L=10: {:.4}, L=100: {:.6}", ratios[0], ratios[1]))
}

fn maxmin_diameter() -> Outcome {
    let tri = equilateral_triangle(1.0);
    let (f, _) = maxmin_diameter_feasible(&tri, 3);
    ensure(f.max_n == 2 && !f.feasible, || format!("triangle feasibility {f:?}"))?;
    ensure(matches!(maxmin_diameter_solve(&tri, 3), Err(Error::InfeasibleN { n: 3, max_n: 2 })), || {
        "triangle n=3 not reported infeasible".into()
    })?;
    let mut constructions = 0;
    for p in standard_corpus() {
        let d = p.polygon.diameter().value;
        let (f, _) = maxmin_diameter_feasible(&p.polygon, 2);
        for n in 2..=f.max_n.min(8) {
            let r = maxmin_diameter_solve(&p.polygon, n).map_err(|e| format!("{} n={n}: {e}", p.name))?;
            for v in r.division.leaf_values(Magnitude::Diameter).map_err(e2s)? {
                ensure((v - d).abs() <= 1e-7, || format!("{} n={n}: leaf diameter {v} vs {d}", p.name))?;
            }
            constructions += 1;
        }
    }
    let v = brute_3division(&tri.into(), Magnitude::Diameter, Objective::MaxMin, &three_grid()).map_err(e2s)?;
    ensure(v < 1.0, || format!("triangle 3-division reaches {v}"))?;
    Ok(format!("{constructions} constructions; triangle 3-division oracle gap {:.1e}", 1.0 - v))
}

fn maxmin_width_two() -> Outcome {
    let sq = maxmin_width_2_solve(&ConvexPolygon::rectangle(1.0, 1.0).map_err(e2s)?.into(), 1e-9).map_err(e2s)?;
    ensure((sq.value - SQRT_2 / 2.0).abs() <= 1e-6, || format!("square {}", sq.value))?;
    let disk = maxmin_width_2_solve(&regular(256).into(), 1e-9).map_err(e2s)?;
    ensure((disk.value - 1.0).abs() <= 1e-3, || format!("disk {}", disk.value))?;
    for p in standard_corpus() {
        let r = maxmin_width_2_solve(&p.polygon.clone().into(), 1e-9).map_err(e2s)?;
        let b = maxmin_width_bounds(&p.polygon, 2).map_err(e2s)?;
        ensure(r.balanced, || format!("{} unbalanced {:?}", p.name, r.per_subset_values))?;
        ensure(r.value >= b.lower - 1e-9 && r.value <= b.upper + 1e-9, || format!("{} out of bounds", p.name))?;
    }
    Ok(format!("square {:.9}, 256-gon {:.9}", sq.value, disk.value))
}

fn maxmin_inradius_two() -> Outcome {
    let tol = 1e-7;
    let disk = maxmin_inradius_2_solve(&regular(256), tol).map_err(e2s)?;
    ensure((disk.value - 0.5).abs() <= 1e-3, || format!("disk {}", disk.value))?;
    let sq = ConvexPolygon::rectangle(1.0, 1.0).map_err(e2s)?;
    let s = maxmin_inradius_2_solve(&sq, tol).map_err(e2s)?;
    let (oracle, _) =
        brute_2division(&sq.clone().into(), Magnitude::Inradius, Objective::MaxMin, &SearchGrid::default()).map_err(e2s)?;
    ensure((s.value - oracle).abs() <= 1e-4, || format!("square {} vs oracle {oracle}", s.value))?;
    for p in standard_corpus() {
        let i = p.polygon.inradius().value;
        let r = maxmin_inradius_2_solve(&p.polygon, tol).map_err(|e| format!("{}: {e}", p.name))?;
        ensure(r.value >= 0.5 * i * (1.0 - 1e-12) && r.value <= i * (1.0 + 1e-12), || format!("{} outside [I/2, I]", p.name))?;
        let residual = r.diagnostics["residual"];
        ensure(residual.abs() <= tol * i, || format!("{} fixed-point residual {residual:e}", p.name))?;
    }
    Ok(format!("256-gon {:.6}, square {:.9} (oracle {:.9})", disk.value, s.value, oracle))
}

fn inequality_suites() -> Outcome {
    let mut count = 0;
    let mut slack = (f64::INFINITY, f64::INFINITY);
    for (k, p) in random_corpus(RANDOM_COUNT, CORPUS_SEED).into_iter().enumerate() {
        let body: Body = p.polygon.clone().into();
        for j in 0..10 {
            let n = 2 + (j % 4);
            let t = random_division(&body, n, (k * 10 + j) as u64).map_err(e2s)?;
            let w: f64 = t.leaf_values(Magnitude::Width).map_err(e2s)?.iter().sum();
            let i: f64 = t.leaf_values(Magnitude::Inradius).map_err(e2s)?.iter().sum();
            ensure(w >= p.polygon.width().value - 1e-9, || format!("Bang fails on {} seed {}", p.name, k * 10 + j))?;
            ensure(i >= p.polygon.inradius().value - 1e-9, || format!("Kadets fails on {} seed {}", p.name, k * 10 + j))?;
            slack = (slack.0.min(w - p.polygon.width().value), slack.1.min(i - p.polygon.inradius().value));
            count += 1;
        }
    }
    Ok(format!("{count} divisions; min slack {:.2e} (widths), {:.2e} (inradii)", slack.0, slack.1))
}

fn machinery() -> Outcome {
    // 3 x 1 rectangle: an H-shaped axis with ridge from (0.5, 0.5) to (2.5, 0.5).
    let rect = ConvexPolygon::rectangle(3.0, 1.0).map_err(e2s)?;
    let axis = MedialAxis::new(&rect);
    let mut inner: Vec<_> = axis.vertices.iter().filter(|v| v.clearance > 0.0).collect();
    inner.sort_by(|a, b| a.point.x.total_cmp(&b.point.x));
    ensure(inner.len() == 2 && axis.edges.len() == 5, || format!("axis shape {:?}", axis.vertices))?;
    for (v, x) in inner.iter().zip([0.5, 2.5]) {
        ensure(v.point.dist(Point2::new(x, 0.5)) <= 1e-9 && (v.clearance - 0.5).abs() <= 1e-9, || {
            format!("axis vertex {:?}", v)
        })?;
    }

    let mut rng_state: u64 = 0x9e37_79b9_7f4a_7c15;
    let mut uniform = || {
        rng_state = rng_state.wrapping_mul(6_364_136_223_846_793_005).wrapping_add(1_442_695_040_888_963_407);
        (rng_state >> 11) as f64 / (1u64 << 53) as f64
    };
    let mut evaluations = 0;
    let mut width_checks = 0;
    for p in random_corpus(RANDOM_COUNT, CORPUS_SEED) {
        let axis = MedialAxis::new(&p.polygon);
        let i = axis.inradius();
        for side in 0..p.polygon.len() {
            let f = axis.relative_width_function(side).map_err(e2s)?;
            for _ in 0..100 {
                let rho = uniform() * i;
                let direct = axis.relative_width(side, rho).map_err(e2s)?;
                ensure((f.eval(rho) - direct).abs() <= 1e-9, || format!("{} side {side} rho {rho}", p.name))?;
                evaluations += 1;
            }
        }
        for k in 1..10 {
            let rho = k as f64 / 10.0 * i;
            let pts = axis.inner_points(rho).map_err(e2s)?;
            let Ok(q) = ConvexPolygon::new(&pts) else { continue };
            if pts.len() < 3 {
                continue;
            }
            let wr = axis.rounded_body(rho).map_err(e2s)?.width_arc(WIDTH_ARC_TOL).map_err(e2s)?;
            ensure((wr - q.width().value - 2.0 * rho).abs() <= 1e-9, || format!("{} rho {rho}: width_arc {wr}", p.name))?;
            width_checks += 1;
        }
        let bodies: Vec<_> = (0..=4).map(|k| axis.rounded_body(k as f64 / 4.0 * i)).collect::<Result<_, _>>().map_err(e2s)?;
        for pair in bodies.windows(2) {
            for q in pair[1].sample_boundary(16) {
                for k in 0..90 {
                    let u = Direction::from_angle(k as f64 * std::f64::consts::TAU / 90.0);
                    ensure(q.dot(u.unit()) <= pair[0].support(u) + 1e-9, || format!("{}: rounded bodies not nested", p.name))?;
                }
            }
        }
    }
    Ok(format!("{evaluations} relative-width evaluations, {width_checks} width_arc checks"))
}

fn call(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut full = vec!["convex-division", "solve"];
    full.extend_from_slice(args);
    let code = run(full, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap_or_default())
}

fn cli_contract() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let write = |name: &str, c: &ConvexPolygon| {
        let path = dir.path().join(format!("{name}.json"));
        std::fs::write(&path, PolygonDocument::from_polygon(name, c).to_json()).map(|_| path.to_string_lossy().into_owned())
    };
    let square = write("square", &ConvexPolygon::rectangle(1.0, 1.0).map_err(e2s)?).map_err(|e| e.to_string())?;
    let tri = write("triangle", &equilateral_triangle(1.0)).map_err(|e| e.to_string())?;

    let (code, out) = call(&["--problem", "minmax", "--magnitude", "width", "--n", "4", "--input", &square]);
    let doc = ReportDocument::parse(&out).map_err(e2s)?;
    ensure(code == 0 && doc.value == Some(0.25) && doc.cuts.len() == 3, || format!("square width: exit {code}, {doc:?}"))?;

    let (code, out) = call(&["--problem", "maxmin", "--magnitude", "diameter", "--n", "3", "--input", &tri]);
    let doc = ReportDocument::parse(&out).map_err(e2s)?;
    ensure(code == 3 && doc.feasibility.map(|f| f.max_n) == Some(2), || format!("triangle diameter: exit {code}"))?;

    let (code, out) = call(&["--problem", "minmax", "--magnitude", "inradius", "--n", "3", "--input", &tri, "--oracle"]);
    let doc = ReportDocument::parse(&out).map_err(e2s)?;
    let exact = 3.0 * (3f64.sqrt() / 6.0) / 7.0;
    let delta = doc.oracle.map(|o| o.delta).ok_or("no oracle delta")?;
    ensure(code == 0 && (doc.value.unwrap_or(0.0) - exact).abs() <= 1e-9, || format!("triangle Conway: exit {code}"))?;

    let mut reports = 0;
    for p in standard_corpus() {
        let c = &p.polygon;
        let mut docs = vec![
            ReportDocument::from_solve(&minmax_width_solve(c, 4).map_err(e2s)?),
            ReportDocument::from_solve(&conway_solve(c, 3).map_err(e2s)?),
        ];
        if maxmin_diameter_feasible(c, 2).0.feasible {
            docs.push(ReportDocument::from_solve(&maxmin_diameter_solve(c, 2).map_err(e2s)?));
        }
        if c.len() <= 12 {
            docs.push(ReportDocument::from_solve(&maxmin_width_2_solve(&c.clone().into(), 1e-9).map_err(e2s)?));
        }
        for doc in docs {
            let back = ReportDocument::parse(&doc.to_json()).map_err(e2s)?;
            ensure(back == doc, || format!("{}: report does not round-trip", p.name))?;
            let replayed = back.replay(c.clone()).map_err(e2s)?.leaf_values(doc.magnitude).map_err(e2s)?;
            for (a, b) in replayed.iter().zip(&doc.per_subset_values) {
                ensure((a - b).abs() <= 1e-9, || format!("{}: replay {a} vs {b}", p.name))?;
            }
            reports += 1;
        }
    }
    Ok(format!("3 commands as specified (oracle delta {delta:.1e}); {reports} reports round-trip and replay"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("min-Max width exactness", minmax_width_exact),
        ("Conway closed forms", conway_closed_forms),
        ("Conway consistency", conway_consistency),
        ("min-Max diameter bounds", minmax_diameter_bounds),
        ("Max-min diameter", maxmin_diameter),
        ("Max-min width n=2", maxmin_width_two),
        ("Max-min inradius n=2", maxmin_inradius_two),
        ("Bang and Kadets inequalities", inequality_suites),
        ("medial axis and rounded bodies", machinery),
        ("CLI contract", cli_contract),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = check();
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} [{secs:.1}s]", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why} [{secs:.1}s]", k + 1);
            }
        }
    }
    println!("{} of {} criteria passed in {:.1}s", criteria.len() - failed, criteria.len(), start.elapsed().as_secs_f64());
    if failed > 0 {
        std::process::exit(1);
    }
}
