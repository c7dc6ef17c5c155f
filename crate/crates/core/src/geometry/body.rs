use serde::{Deserialize, Serialize};

use super::{ArcSegmentBody, ConvexPolygon, Direction, LineCut, Point2, WIDTH_ARC_TOL};
use crate::error::{Error, Result};

/// Functional being minimised or maximised over the pieces of a division.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Magnitude {
    Diameter,
    Width,
    Inradius,
}

impl Magnitude {
    pub fn name(self) -> &'static str {
        match self {
            Magnitude::Diameter => "diameter",
            Magnitude::Width => "width",
            Magnitude::Inradius => "inradius",
        }
    }
}

impl std::str::FromStr for Magnitude {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "diameter" => Ok(Magnitude::Diameter),
            "width" => Ok(Magnitude::Width),
            "inradius" => Ok(Magnitude::Inradius),
            other => Err(Error::InvalidArgument(format!("unknown magnitude {other:?}"))),
        }
    }
}

/// A planar convex region: either a polygon or an arc-segment chain.
#[derive(Debug, Clone, PartialEq)]
pub enum Body {
    Polygon(ConvexPolygon),
    Arcs(ArcSegmentBody),
}

impl From<ConvexPolygon> for Body {
    fn from(p: ConvexPolygon) -> Self {
        Body::Polygon(p)
    }
}

impl From<ArcSegmentBody> for Body {
    fn from(b: ArcSegmentBody) -> Self {
        Body::Arcs(b)
    }
}

impl Body {
    pub fn support(&self, u: Direction) -> f64 {
        match self {
            Body::Polygon(p) => p.support(u),
            Body::Arcs(b) => b.support(u),
        }
    }

    pub fn breadth(&self, u: Direction) -> f64 {
        self.support(u) + self.support(u.opposite())
    }

    /// Interval of `<x, u>` over the body.
    pub fn extent(&self, u: Direction) -> (f64, f64) {
        (-self.support(u.opposite()), self.support(u))
    }

    pub fn area(&self) -> f64 {
        match self {
            Body::Polygon(p) => p.area(),
            Body::Arcs(b) => b.area(),
        }
    }

    pub fn diagonal(&self) -> f64 {
        match self {
            Body::Polygon(p) => p.diagonal(),
            Body::Arcs(b) => b.diagonal(),
        }
    }

    pub fn width(&self) -> Result<f64> {
        match self {
            Body::Polygon(p) => Ok(p.width().value),
            Body::Arcs(b) => b.width_arc(WIDTH_ARC_TOL),
        }
    }

    /// Minimal width with the normal of a slab attaining it.
    pub fn width_with_direction(&self) -> Result<(f64, Direction)> {
        match self {
            Body::Polygon(p) => {
                let w = p.width();
                Ok((w.value, w.slab.normal))
            }
            Body::Arcs(b) => b.width_with_direction(WIDTH_ARC_TOL),
        }
    }

    pub fn diameter(&self) -> f64 {
        match self {
            Body::Polygon(p) => p.diameter().value,
            Body::Arcs(b) => b.diameter(),
        }
    }

    pub fn inradius(&self) -> Result<f64> {
        match self {
            Body::Polygon(p) => Ok(p.inradius().value),
            Body::Arcs(_) => Err(Error::Unsupported("inradius of an arc-segment body".into())),
        }
    }

    pub fn magnitude(&self, m: Magnitude) -> Result<f64> {
        match m {
            Magnitude::Diameter => Ok(self.diameter()),
            Magnitude::Width => self.width(),
            Magnitude::Inradius => self.inradius(),
        }
    }

    pub fn clip(&self, cut: &LineCut) -> Result<(Body, Body)> {
        match self {
            Body::Polygon(p) => p.clip(cut).map(|(l, r)| (l.into(), r.into())),
            Body::Arcs(b) => b.clip(cut).map(|(l, r)| (l.into(), r.into())),
        }
    }

    pub fn chord(&self, cut: &LineCut) -> Option<(Point2, Point2)> {
        match self {
            Body::Polygon(p) => p.chord(cut),
            Body::Arcs(b) => b.chord(cut),
        }
    }

    pub fn as_polygon(&self) -> Option<&ConvexPolygon> {
        match self {
            Body::Polygon(p) => Some(p),
            Body::Arcs(_) => None,
        }
    }

    /// Closed boundary approximation for drawing.
    pub fn outline(&self) -> Vec<Point2> {
        match self {
            Body::Polygon(p) => p.vertices().to_vec(),
            Body::Arcs(b) => b.sample_boundary(48),
        }
    }
}
