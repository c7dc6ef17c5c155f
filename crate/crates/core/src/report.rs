use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::division::DivisionTree;
use crate::geometry::Magnitude;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Objective {
    MinMax,
    MaxMin,
}

impl Objective {
    pub fn name(self) -> &'static str {
        match self {
            Objective::MinMax => "minmax",
            Objective::MaxMin => "maxmin",
        }
    }

    /// Value of a division under this objective: the largest or the
    /// smallest subset value.
    pub fn combine(self, values: &[f64]) -> f64 {
        match self {
            Objective::MinMax => values.iter().cloned().fold(f64::NEG_INFINITY, f64::max),
            Objective::MaxMin => values.iter().cloned().fold(f64::INFINITY, f64::min),
        }
    }

    /// Whether `a` is a strictly better objective value than `b`.
    pub fn better(self, a: f64, b: f64) -> bool {
        match self {
            Objective::MinMax => a < b,
            Objective::MaxMin => a > b,
        }
    }

    pub fn worst(self) -> f64 {
        match self {
            Objective::MinMax => f64::INFINITY,
            Objective::MaxMin => f64::NEG_INFINITY,
        }
    }
}

impl std::str::FromStr for Objective {
    type Err = crate::Error;
    fn from_str(s: &str) -> crate::Result<Self> {
        match s {
            "minmax" => Ok(Objective::MinMax),
            "maxmin" => Ok(Objective::MaxMin),
            other => Err(crate::Error::InvalidArgument(format!("unknown problem {other:?}"))),
        }
    }
}

/// Existence data for the Max-min diameter problem.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Feasibility {
    pub feasible: bool,
    pub max_n: usize,
    pub a: usize,
    pub b: usize,
    pub delta: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundsReport {
    pub lower: f64,
    pub lower_strict: bool,
    pub upper: f64,
    pub witness: Option<DivisionTree>,
    pub mesh_tuple: Option<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveReport {
    pub objective: Objective,
    pub magnitude: Magnitude,
    pub n: usize,
    pub value: f64,
    pub division: DivisionTree,
    pub per_subset_values: Vec<f64>,
    pub balanced: bool,
    pub tolerance: f64,
    pub feasibility: Option<Feasibility>,
    pub diagnostics: BTreeMap<String, f64>,
}

/// Whether all values agree with their common extreme within `rel`.
pub(crate) fn is_balanced(values: &[f64], rel: f64) -> bool {
    let hi = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let lo = values.iter().cloned().fold(f64::INFINITY, f64::min);
    hi - lo <= rel * hi.abs().max(f64::MIN_POSITIVE)
}
