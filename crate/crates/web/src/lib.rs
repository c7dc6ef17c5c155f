//! WebAssembly bindings for the browser demo.
//!
//! Each exported function takes the polygon as a JSON array of `[x, y]`
//! pairs and returns a JSON object with the optimal value, the per-piece
//! values and an SVG drawing of the division.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use convex_division::geometry::{ConvexPolygon, Magnitude, Point2};
use convex_division::maxmin::maxmin_width_2_solve;
use convex_division::minmax::{conway_solve, minmax_width_solve};
use convex_division::report::SolveReport;
use convex_division::svg;

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct Answer {
    value: f64,
    per_subset_values: Vec<f64>,
    svg: String,
}

fn parse(vertices: &str) -> Result<ConvexPolygon, String> {
    let raw: Vec<[f64; 2]> = serde_json::from_str(vertices).map_err(|e| format!("bad vertex list: {e}"))?;
    let pts: Vec<Point2> = raw.into_iter().map(Point2::from).collect();
    ConvexPolygon::new(&pts).map_err(|e| e.to_string())
}

fn answer(r: SolveReport, title: &str) -> String {
    let labels: Vec<String> = r.per_subset_values.iter().map(|v| format!("{v:.4}")).collect();
    let caption = [format!("{title}, n = {}", r.n), format!("value {:.9}", r.value)];
    let drawing = svg::render(r.division.root(), Some(&r.division), &labels, &caption);
    let a = Answer { value: r.value, per_subset_values: r.per_subset_values, svg: drawing };
    serde_json::to_string(&a).expect("answers serialize")
}

pub fn solve_minmax_width(vertices: &str, n: usize) -> Result<String, String> {
    let c = parse(vertices)?;
    let r = minmax_width_solve(&c, n).map_err(|e| e.to_string())?;
    Ok(answer(r, "min-Max width"))
}

pub fn solve_conway(vertices: &str, n: usize) -> Result<String, String> {
    let c = parse(vertices)?;
    let r = conway_solve(&c, n).map_err(|e| e.to_string())?;
    Ok(answer(r, "min-Max inradius"))
}

pub fn solve_maxmin_width(vertices: &str) -> Result<String, String> {
    let c = parse(vertices)?;
    let r = maxmin_width_2_solve(&c.into(), 1e-9).map_err(|e| e.to_string())?;
    debug_assert_eq!(r.magnitude, Magnitude::Width);
    Ok(answer(r, "max-min width"))
}

/// Parallel cuts into `n` strips of equal width.
#[wasm_bindgen(js_name = minmaxWidth)]
pub fn minmax_width(vertices: &str, n: usize) -> Result<String, JsError> {
    solve_minmax_width(vertices, n).map_err(|e| JsError::new(&e))
}

/// Conway's fair partition: parallel cuts minimizing the largest inradius.
#[wasm_bindgen(js_name = conway)]
pub fn conway(vertices: &str, n: usize) -> Result<String, JsError> {
    solve_conway(vertices, n).map_err(|e| JsError::new(&e))
}

/// The single cut maximizing the smaller of the two widths.
#[wasm_bindgen(js_name = maxminWidth)]
pub fn maxmin_width(vertices: &str) -> Result<String, JsError> {
    solve_maxmin_width(vertices).map_err(|e| JsError::new(&e))
}
