use std::path::{Path, PathBuf};
use std::process::Command;

use convex_division::cli::run;
use convex_division::corpus::{equilateral_triangle, regular};
use convex_division::geometry::ConvexPolygon;
use convex_division::io::{PolygonDocument, ReportDocument, Status};

fn write_polygon(dir: &Path, name: &str, c: &ConvexPolygon) -> PathBuf {
    let path = dir.join(format!("{name}.json"));
    std::fs::write(&path, PolygonDocument::from_polygon(name, c).to_json()).unwrap();
    path
}

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut full = vec!["convex-division"];
    full.extend_from_slice(args);
    let code = run(full, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn solve(args: &[&str]) -> (i32, ReportDocument) {
    let mut full = vec!["solve"];
    full.extend_from_slice(args);
    let (code, out, err) = call(&full);
    let doc = ReportDocument::parse(&out).unwrap_or_else(|e| panic!("{e}: {out} {err}"));
    (code, doc)
}

#[test]
fn minmax_width_square() {
    let dir = tempfile::tempdir().unwrap();
    let sq = write_polygon(dir.path(), "square", &ConvexPolygon::rectangle(1.0, 1.0).unwrap());
    let sq = sq.to_str().unwrap();
    let (code, doc) = solve(&["--problem", "minmax", "--magnitude", "width", "--n", "4", "--input", sq]);
    assert_eq!(code, 0);
    assert_eq!(doc.status, Status::Solved);
    assert!((doc.value.unwrap() - 0.25).abs() < 1e-12);
    assert_eq!(doc.cuts.len(), 3);
}

#[test]
fn triangle_diameter_is_infeasible() {
    let dir = tempfile::tempdir().unwrap();
    let t = write_polygon(dir.path(), "triangle", &equilateral_triangle(1.0));
    let (code, doc) = solve(&["--problem", "maxmin", "--magnitude", "diameter", "--n", "3", "--input", t.to_str().unwrap()]);
    assert_eq!(code, 3);
    assert_eq!(doc.status, Status::Infeasible);
    assert_eq!(doc.feasibility.unwrap().max_n, 2);
}

#[test]
fn conway_triangle_with_oracle() {
    let dir = tempfile::tempdir().unwrap();
    let t = write_polygon(dir.path(), "triangle", &equilateral_triangle(1.0));
    let (code, doc) =
        solve(&["--problem", "minmax", "--magnitude", "inradius", "--n", "3", "--input", t.to_str().unwrap(), "--oracle"]);
    assert_eq!(code, 0);
    let r = 3f64.sqrt() / 6.0;
    assert!((doc.value.unwrap() - 3.0 * r / 7.0).abs() < 1e-9);
    assert!(doc.oracle.unwrap().delta.abs() < 1e-4);
}

#[test]
fn unsupported_combinations_report_bounds() {
    let dir = tempfile::tempdir().unwrap();
    let sq = write_polygon(dir.path(), "square", &ConvexPolygon::rectangle(1.0, 1.0).unwrap());
    let sq = sq.to_str().unwrap();
    for m in ["width", "inradius"] {
        let (code, doc) = solve(&["--problem", "maxmin", "--magnitude", m, "--n", "3", "--input", sq]);
        assert_eq!(code, 2);
        assert_eq!(doc.status, Status::Unsupported);
        assert!(doc.message.unwrap().starts_with("unsupported: bounds only"));
        let b = doc.bounds.unwrap();
        assert!(b.lower <= b.upper);
    }
    let (code, doc) = solve(&["--problem", "minmax", "--magnitude", "diameter", "--n", "7", "--input", sq]);
    assert_eq!(code, 0);
    assert_eq!(doc.status, Status::Bounds);
    assert_eq!(doc.bounds.unwrap().mesh_tuple, Some(vec![2, 3]));
    assert_eq!(doc.cuts.len(), 5);
}

#[test]
fn input_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"schema": 1, "name": "bow", "vertices": [[0,0],[1,1],[1,0],[0,1]]}"#).unwrap();
    let (code, _, err) =
        call(&["solve", "--problem", "minmax", "--magnitude", "width", "--n", "2", "--input", bad.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(err.contains("bad.json"));
    let (code, _, _) = call(&["solve", "--problem", "sideways", "--magnitude", "width", "--n", "2", "--input", "x"]);
    assert_eq!(code, 1);
    let sq = write_polygon(dir.path(), "square", &ConvexPolygon::rectangle(1.0, 1.0).unwrap());
    let (code, _, _) =
        call(&["solve", "--problem", "minmax", "--magnitude", "width", "--n", "1", "--input", sq.to_str().unwrap()]);
    assert_eq!(code, 1);
}

#[test]
fn render_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let t = write_polygon(dir.path(), "triangle", &equilateral_triangle(1.0));
    let (_, out, _) =
        call(&["solve", "--problem", "minmax", "--magnitude", "inradius", "--n", "3", "--input", t.to_str().unwrap()]);
    let report = dir.path().join("report.json");
    std::fs::write(&report, out).unwrap();
    let mut drawings = Vec::new();
    for k in 0..2 {
        let svg = dir.path().join(format!("out{k}.svg"));
        let args = ["render", "--input", t.to_str().unwrap(), "--report", report.to_str().unwrap(), "--svg", svg.to_str().unwrap()];
        assert_eq!(call(&args).0, 0);
        drawings.push(std::fs::read(&svg).unwrap());
    }
    assert_eq!(drawings[0], drawings[1]);
    let text = String::from_utf8(drawings.remove(0)).unwrap();
    assert_eq!(text.matches("class=\"cut\"").count(), 2);

    std::fs::write(&report, r#"{"schema": 9}"#).unwrap();
    let svg = dir.path().join("bad.svg");
    let args = ["render", "--input", t.to_str().unwrap(), "--report", report.to_str().unwrap(), "--svg", svg.to_str().unwrap()];
    assert_eq!(call(&args).0, 1);
}

#[test]
fn corpus_command_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(call(&["corpus", "--dir", dir.path().to_str().unwrap()]).0, 1);

    write_polygon(dir.path(), "square", &ConvexPolygon::rectangle(1.0, 1.0).unwrap());
    write_polygon(dir.path(), "hexagon", &regular(6));
    let (code, out, err) = call(&["corpus", "--dir", dir.path().to_str().unwrap()]);
    assert_eq!(code, 0, "{err}");
    assert_eq!(out.lines().count(), 4);
    assert!(out.lines().skip(2).all(|l| l.ends_with("| ok |")));

    std::fs::write(dir.path().join("dart.json"), r#"{"name": "dart", "vertices": [[0,0],[2,0],[1,0.2],[1,2]]}"#).unwrap();
    let (code, _, err) = call(&["corpus", "--dir", dir.path().to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(err.contains("dart.json"));
}

#[test]
fn binary_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let t = write_polygon(dir.path(), "triangle", &equilateral_triangle(1.0));
    let status = Command::new(env!("CARGO_BIN_EXE_convex-division"))
        .args(["solve", "--problem", "maxmin", "--magnitude", "diameter", "--n", "3", "--input"])
        .arg(&t)
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(3));
    let status = Command::new(env!("CARGO_BIN_EXE_convex-division")).arg("--help").output().unwrap();
    assert_eq!(status.status.code(), Some(0));
}
