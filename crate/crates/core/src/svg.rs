//! Deterministic SVG drawings of a body and its division.

use std::fmt::Write;

use crate::division::DivisionTree;
use crate::geometry::{Body, Direction, Point2};

const FILLS: [&str; 6] = ["#8ecae6", "#ffb703", "#90be6d", "#f28482", "#cdb4db", "#bde0fe"];
const PIXELS: f64 = 640.0;

struct Frame {
    x0: f64,
    y1: f64,
    w: f64,
    h: f64,
}

impl Frame {
    fn new(body: &Body) -> Self {
        let (xl, xh) = body.extent(Direction::from_angle(0.0));
        let (yl, yh) = body.extent(Direction::from_angle(0.5 * std::f64::consts::PI));
        let m = 0.05 * (xh - xl).max(yh - yl);
        Frame { x0: xl - m, y1: yh + m, w: xh - xl + 2.0 * m, h: yh - yl + 2.0 * m }
    }

    /// SVG coordinates: shifted to the origin with the y axis flipped.
    fn map(&self, p: Point2) -> (f64, f64) {
        (p.x - self.x0, self.y1 - p.y)
    }

    fn path(&self, pts: &[Point2]) -> String {
        let mut d = String::new();
        for (i, &p) in pts.iter().enumerate() {
            let (x, y) = self.map(p);
            let _ = write!(d, "{}{:.6},{:.6} ", if i == 0 { "M" } else { "L" }, x, y);
        }
        d.push('Z');
        d
    }
}

fn centroid(pts: &[Point2]) -> Point2 {
    let sum = pts.iter().fold(Point2::default(), |acc, &p| acc + p);
    sum * (1.0 / pts.len().max(1) as f64)
}

/// Draws `body`, then the leaves and cut chords of `division` in cut order.
/// `leaf_labels` are written at the leaf centers and `caption` lines at the
/// top left.
pub fn render(body: &Body, division: Option<&DivisionTree>, leaf_labels: &[String], caption: &[String]) -> String {
    let f = Frame::new(body);
    let scale = f.w.max(f.h);
    let stroke = 0.004 * scale;
    let font = 0.03 * scale;
    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{:.0}" height="{:.0}" viewBox="0 0 {:.6} {:.6}">"#,
        PIXELS,
        PIXELS * f.h / f.w,
        f.w,
        f.h
    );
    let _ = writeln!(s, r#"<rect x="0" y="0" width="{:.6}" height="{:.6}" fill="white"/>"#, f.w, f.h);
    if let Some(t) = division {
        for (i, leaf) in t.leaves().iter().enumerate() {
            let _ = writeln!(
                s,
                r##"<path class="leaf" d="{}" fill="{}" fill-opacity="0.7" stroke="none"/>"##,
                f.path(&leaf.outline()),
                FILLS[i % FILLS.len()]
            );
        }
    }
    let _ = writeln!(
        s,
        r##"<path class="body" d="{}" fill="none" stroke="#222222" stroke-width="{:.6}"/>"##,
        f.path(&body.outline()),
        stroke
    );
    if let Some(t) = division {
        for (k, &(a, b)) in t.chords().iter().enumerate() {
            let (ax, ay) = f.map(a);
            let (bx, by) = f.map(b);
            let _ = writeln!(
                s,
                r##"<line class="cut" data-order="{}" x1="{:.6}" y1="{:.6}" x2="{:.6}" y2="{:.6}" stroke="#c1121f" stroke-width="{:.6}"/>"##,
                k + 1,
                ax,
                ay,
                bx,
                by,
                stroke
            );
        }
        for (leaf, label) in t.leaves().iter().zip(leaf_labels) {
            let (x, y) = f.map(centroid(&leaf.outline()));
            let _ = writeln!(
                s,
                r#"<text x="{x:.6}" y="{y:.6}" font-size="{:.6}" text-anchor="middle" font-family="sans-serif">{}</text>"#,
                0.8 * font,
                escape(label)
            );
        }
    }
    for (i, line) in caption.iter().enumerate() {
        let _ = writeln!(
            s,
            r#"<text x="{:.6}" y="{:.6}" font-size="{:.6}" font-family="sans-serif">{}</text>"#,
            0.5 * font,
            (i as f64 + 1.2) * font,
            font,
            escape(line)
        );
    }
    s.push_str("</svg>\n");
    s
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
