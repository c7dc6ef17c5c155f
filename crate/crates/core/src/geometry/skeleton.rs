//! Inward offsetting of a convex polygon.
//!
//! Every side moves inward at unit speed. Each vertex of the shrinking
//! polygon travels along the bisector of its two sides; when a side shrinks
//! to zero length its neighbours become adjacent. The traces of the vertices
//! form the medial axis, the time at which the polygon degenerates to a
//! point or a segment is the inradius, and the snapshot at time `t` is the
//! inner parallel body at distance `t`.

use super::Point2;

#[derive(Debug, Clone)]
pub(crate) struct Snapshot {
    pub time: f64,
    pub active: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum InnerShape {
    /// `vertices[i]` lies between sides `edges[i - 1]` and `edges[i]`.
    Polygon { edges: Vec<usize>, vertices: Vec<Point2> },
    /// Degenerate inner body. `start -> end` runs counterclockwise along the
    /// side `sides.0`; `sides.1` is the antiparallel side.
    Segment { start: Point2, end: Point2, sides: (usize, usize) },
    Point(Point2),
}

#[derive(Debug, Clone)]
pub(crate) struct AxisEdge {
    pub nodes: (usize, usize),
    pub sides: (usize, usize),
}

#[derive(Debug, Clone)]
pub(crate) struct ShrinkHistory {
    pub normals: Vec<Point2>,
    pub offsets: Vec<f64>,
    pub scale: f64,
    pub snapshots: Vec<Snapshot>,
    pub final_time: f64,
    pub final_shape: InnerShape,
    pub nodes: Vec<(Point2, f64)>,
    pub edges: Vec<AxisEdge>,
}

/// Turn angle from normal `a` to normal `b`, in `(-π, π]`.
fn turn(a: Point2, b: Point2) -> f64 {
    a.cross(b).atan2(a.dot(b))
}

fn degenerate_turn(a: Point2, b: Point2) -> bool {
    let t = turn(a, b);
    t <= 0.0 || t >= std::f64::consts::PI - 1e-12
}

impl ShrinkHistory {
    /// Runs the offsetting process on a counterclockwise strictly convex
    /// vertex list.
    pub fn new(vertices: &[Point2]) -> Self {
        let m = vertices.len();
        let mut normals = Vec::with_capacity(m);
        let mut offsets = Vec::with_capacity(m);
        let (mut lo, mut hi) = (vertices[0], vertices[0]);
        for i in 0..m {
            let p = vertices[i];
            let q = vertices[(i + 1) % m];
            let d = q - p;
            let len = d.norm();
            let n = Point2::new(d.y / len, -d.x / len);
            normals.push(n);
            offsets.push(n.dot(p));
            lo = Point2::new(lo.x.min(p.x), lo.y.min(p.y));
            hi = Point2::new(hi.x.max(p.x), hi.y.max(p.y));
        }
        let scale = (hi - lo).norm();
        let mut h = ShrinkHistory {
            normals,
            offsets,
            scale,
            snapshots: Vec::new(),
            final_time: 0.0,
            final_shape: InnerShape::Point(vertices[0]),
            nodes: vertices.iter().map(|&p| (p, 0.0)).collect(),
            edges: Vec::new(),
        };
        h.run();
        h
    }

    pub fn vertex(&self, a: usize, b: usize, t: f64) -> Point2 {
        let (na, nb) = (self.normals[a], self.normals[b]);
        let (ca, cb) = (self.offsets[a] - t, self.offsets[b] - t);
        let det = na.cross(nb);
        Point2::new((ca * nb.y - cb * na.y) / det, (na.x * cb - nb.x * ca) / det)
    }

    fn edge_length(&self, a: usize, b: usize, c: usize, t: f64) -> f64 {
        let d = self.normals[b].perp();
        (self.vertex(b, c, t) - self.vertex(a, b, t)).dot(d)
    }

    fn collapse_time(&self, a: usize, b: usize, c: usize, now: f64) -> f64 {
        let l0 = self.edge_length(a, b, c, now);
        let rate = self.edge_length(a, b, c, now + 1.0) - l0;
        if rate >= 0.0 {
            f64::INFINITY
        } else {
            now + (l0.max(0.0) / -rate)
        }
    }

    fn add_node(&mut self, p: Point2, t: f64, fresh_from: usize) -> usize {
        let tol = 1e-9 * self.scale;
        if let Some(i) = (fresh_from..self.nodes.len()).find(|&i| self.nodes[i].0.dist(p) <= tol) {
            return i;
        }
        self.nodes.push((p, t));
        self.nodes.len() - 1
    }

    fn run(&mut self) {
        let m0 = self.normals.len();
        let mut active: Vec<usize> = (0..m0).collect();
        // starts[k]: axis node where the vertex between active[k-1] and active[k] began.
        let mut starts: Vec<usize> = (0..m0).collect();
        let mut now = 0.0;
        self.snapshots.push(Snapshot { time: 0.0, active: active.clone() });
        let t_tol = 1e-11 * self.scale;
        let l_tol = 1e-10 * self.scale;

        loop {
            let m = active.len();
            let prev = |k: usize| (k + m - 1) % m;
            let next = |k: usize| (k + 1) % m;
            let times: Vec<f64> = (0..m)
                .map(|k| self.collapse_time(active[prev(k)], active[k], active[next(k)], now))
                .collect();
            let t_min = times.iter().cloned().fold(f64::INFINITY, f64::min);
            let collapsing: Vec<bool> = (0..m)
                .map(|k| {
                    times[k] <= t_min + t_tol
                        || self.edge_length(active[prev(k)], active[k], active[next(k)], t_min) <= l_tol
                })
                .collect();
            let fresh = self.nodes.len();

            if collapsing.iter().all(|&c| c) {
                let mut acc = Point2::default();
                for k in 0..m {
                    acc = acc + self.vertex(active[prev(k)], active[k], t_min);
                }
                let p = acc * (1.0 / m as f64);
                let node = self.add_node(p, t_min, fresh);
                for k in 0..m {
                    self.edges.push(AxisEdge {
                        nodes: (starts[k], node),
                        sides: (active[prev(k)], active[k]),
                    });
                }
                self.final_time = t_min;
                self.final_shape = InnerShape::Point(p);
                return;
            }

            // Runs of consecutive collapsing sides, walked from a surviving side.
            let first_alive = (0..m).find(|&k| !collapsing[k]).unwrap();
            let mut new_active = Vec::new();
            let mut new_starts = Vec::new();
            let mut collapse_points: Vec<(Point2, usize)> = Vec::new();
            let mut new_pairs: Vec<(usize, usize)> = Vec::new();
            // Vertices between two surviving sides keep their start node.
            let mut pending_vertices: Vec<(usize, usize, usize)> = Vec::new();
            let mut k = first_alive;
            let mut steps = 0;
            while steps < m {
                let a = active[k];
                new_active.push(a);
                let mut j = next(k);
                let mut run_len = 0;
                while collapsing[j] {
                    j = next(j);
                    run_len += 1;
                }
                if run_len == 0 {
                    // vertex between a and active[j] survives; its start is starts[j].
                    pending_vertices.push((a, active[j], starts[j]));
                    new_starts.push(starts[j]);
                } else {
                    let b_first = active[next(k)];
                    let b_last = active[prev(j)];
                    let c = active[j];
                    let p = self.vertex(a, b_first, t_min).lerp(self.vertex(b_last, c, t_min), 0.5);
                    let node = self.add_node(p, t_min, fresh);
                    let mut v = next(k);
                    loop {
                        self.edges.push(AxisEdge {
                            nodes: (starts[v], node),
                            sides: (active[prev(v)], active[v]),
                        });
                        if v == j {
                            break;
                        }
                        v = next(v);
                    }
                    collapse_points.push((p, node));
                    new_pairs.push((a, c));
                    new_starts.push(node);
                }
                steps += run_len + 1;
                k = j;
            }
            // new_starts[i] is the vertex after new_active[i]; rotate so that
            // entry i is the vertex before new_active[i].
            new_starts.rotate_right(1);

            let degenerate = new_active.len() <= 2
                || new_pairs.iter().any(|&(a, c)| degenerate_turn(self.normals[a], self.normals[c]));

            if !degenerate {
                active = new_active;
                starts = new_starts;
                now = t_min;
                self.snapshots.push(Snapshot { time: now, active: active.clone() });
                continue;
            }

            // The polygon has collapsed onto a point or a segment.
            let mut points = collapse_points.clone();
            for &(a, b, start) in &pending_vertices {
                if degenerate_turn(self.normals[a], self.normals[b]) {
                    continue;
                }
                let p = self.vertex(a, b, t_min);
                let node = self.add_node(p, t_min, fresh);
                self.edges.push(AxisEdge { nodes: (start, node), sides: (a, b) });
                points.push((p, node));
            }
            self.final_time = t_min;
            let antiparallel = new_pairs
                .iter()
                .copied()
                .chain(if new_active.len() == 2 { Some((new_active[0], new_active[1])) } else { None })
                .find(|&(a, c)| degenerate_turn(self.normals[a], self.normals[c]));
            let mut distinct: Vec<(Point2, usize)> = Vec::new();
            for (p, node) in points {
                if !distinct.iter().any(|&(_, n)| n == node) {
                    distinct.push((p, node));
                }
            }
            match (antiparallel, distinct.len()) {
                (Some((a, c)), len) if len >= 2 => {
                    let dir = self.normals[a].perp();
                    distinct.sort_by(|x, y| x.0.dot(dir).total_cmp(&y.0.dot(dir)));
                    for w in distinct.windows(2) {
                        self.edges.push(AxisEdge { nodes: (w[0].1, w[1].1), sides: (a, c) });
                    }
                    let start = distinct[0].0;
                    let end = distinct[distinct.len() - 1].0;
                    self.final_shape = InnerShape::Segment { start, end, sides: (a, c) };
                }
                _ => {
                    let mut acc = Point2::default();
                    for &(p, _) in &distinct {
                        acc = acc + p;
                    }
                    self.final_shape = InnerShape::Point(acc * (1.0 / distinct.len().max(1) as f64));
                }
            }
            return;
        }
    }

    /// The inner parallel body at distance `t` (clamped to `[0, final_time]`).
    pub fn inner_at(&self, t: f64) -> InnerShape {
        if t >= self.final_time {
            return self.final_shape.clone();
        }
        let t = t.max(0.0);
        let idx = self.snapshots.partition_point(|s| s.time <= t).saturating_sub(1);
        let active = &self.snapshots[idx].active;
        let m = active.len();
        let vertices = (0..m)
            .map(|k| self.vertex(active[(k + m - 1) % m], active[k], t))
            .collect();
        InnerShape::Polygon { edges: active.clone(), vertices }
    }

    /// Center of the final (degenerate) inner body.
    pub fn center(&self) -> Point2 {
        match &self.final_shape {
            InnerShape::Point(p) => *p,
            InnerShape::Segment { start, end, .. } => start.lerp(*end, 0.5),
            InnerShape::Polygon { vertices, .. } => vertices[0],
        }
    }
}
