//! JSON documents: input polygons and solver reports.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::division::{CutStep, DivisionTree};
use crate::error::{Error, Result};
use crate::geometry::{Body, ConvexPolygon, Direction, LineCut, Magnitude, Point2};
use crate::report::{BoundsReport, Feasibility, Objective, SolveReport};

pub const SCHEMA: u32 = 1;

fn schema_default() -> u32 {
    SCHEMA
}

fn check_schema(found: u32) -> Result<()> {
    if found != SCHEMA {
        return Err(Error::Schema(format!("unsupported schema {found}, expected {SCHEMA}")));
    }
    Ok(())
}

fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Schema(format!("{}: {e}", path.display())))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolygonDocument {
    #[serde(default = "schema_default")]
    pub schema: u32,
    pub name: String,
    pub vertices: Vec<[f64; 2]>,
}

impl PolygonDocument {
    pub fn from_polygon(name: impl Into<String>, polygon: &ConvexPolygon) -> Self {
        PolygonDocument {
            schema: SCHEMA,
            name: name.into(),
            vertices: polygon.vertices().iter().map(|p| [p.x, p.y]).collect(),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let doc: PolygonDocument = serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
        check_schema(doc.schema)?;
        Ok(doc)
    }

    pub fn read(path: &Path) -> Result<Self> {
        PolygonDocument::parse(&read_text(path)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("polygon documents serialize") + "\n"
    }

    pub fn polygon(&self) -> Result<ConvexPolygon> {
        let pts: Vec<Point2> = self.vertices.iter().map(|&v| v.into()).collect();
        ConvexPolygon::new(&pts)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CutRecord {
    pub leaf: usize,
    pub normal_angle: f64,
    pub offset: f64,
}

impl From<&CutStep> for CutRecord {
    fn from(s: &CutStep) -> Self {
        CutRecord { leaf: s.leaf, normal_angle: s.cut.normal.angle(), offset: s.cut.offset }
    }
}

impl CutRecord {
    pub fn step(&self) -> CutStep {
        CutStep { leaf: self.leaf, cut: LineCut::new(Direction::from_angle(self.normal_angle), self.offset) }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Solved,
    Bounds,
    Infeasible,
    Unsupported,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct BoundsRecord {
    pub lower: f64,
    pub lower_strict: bool,
    pub upper: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mesh_tuple: Option<Vec<usize>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OracleRecord {
    pub value: f64,
    /// Oracle value minus the reported value (or the upper bound).
    pub delta: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ReportDocument {
    pub schema: u32,
    pub problem: Objective,
    pub magnitude: Magnitude,
    pub n: usize,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bounds: Option<BoundsRecord>,
    #[serde(default)]
    pub cuts: Vec<CutRecord>,
    #[serde(default)]
    pub per_subset_values: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub balanced: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub feasibility: Option<Feasibility>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub diagnostics: BTreeMap<String, f64>,
}

impl ReportDocument {
    fn empty(problem: Objective, magnitude: Magnitude, n: usize, status: Status) -> Self {
        ReportDocument {
            schema: SCHEMA,
            problem,
            magnitude,
            n,
            status,
            value: None,
            bounds: None,
            cuts: Vec::new(),
            per_subset_values: Vec::new(),
            balanced: None,
            tolerance: None,
            feasibility: None,
            oracle: None,
            message: None,
            diagnostics: BTreeMap::new(),
        }
    }

    pub fn from_solve(r: &SolveReport) -> Self {
        let mut doc = ReportDocument::empty(r.objective, r.magnitude, r.n, Status::Solved);
        doc.value = Some(r.value);
        doc.cuts = r.division.steps().iter().map(CutRecord::from).collect();
        doc.per_subset_values = r.per_subset_values.clone();
        doc.balanced = Some(r.balanced);
        doc.tolerance = Some(r.tolerance);
        doc.feasibility = r.feasibility;
        doc.diagnostics = r.diagnostics.clone();
        doc
    }

    /// A bounds-only report; the witness division, when present, supplies
    /// the cuts and per-subset values for `magnitude`.
    pub fn from_bounds(
        problem: Objective,
        magnitude: Magnitude,
        n: usize,
        b: &BoundsReport,
        status: Status,
    ) -> Result<Self> {
        let mut doc = ReportDocument::empty(problem, magnitude, n, status);
        doc.bounds =
            Some(BoundsRecord { lower: b.lower, lower_strict: b.lower_strict, upper: b.upper, mesh_tuple: b.mesh_tuple.clone() });
        if let Some(w) = &b.witness {
            doc.cuts = w.steps().iter().map(CutRecord::from).collect();
            doc.per_subset_values = w.leaf_values(magnitude)?;
        }
        Ok(doc)
    }

    pub fn infeasible(problem: Objective, magnitude: Magnitude, n: usize, f: Feasibility) -> Self {
        let mut doc = ReportDocument::empty(problem, magnitude, n, Status::Infeasible);
        doc.feasibility = Some(f);
        doc.message = Some(format!("no optimal {n}-division exists; largest feasible n is {}", f.max_n));
        doc
    }

    pub fn parse(text: &str) -> Result<Self> {
        let doc: ReportDocument = serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
        check_schema(doc.schema)?;
        Ok(doc)
    }

    pub fn read(path: &Path) -> Result<Self> {
        ReportDocument::parse(&read_text(path)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }

    pub fn steps(&self) -> Vec<CutStep> {
        self.cuts.iter().map(CutRecord::step).collect()
    }

    /// Applies the recorded cuts to `body` in order.
    pub fn replay(&self, body: impl Into<Body>) -> Result<DivisionTree> {
        DivisionTree::replay(body, &self.steps())
    }
}
