//! Successive-cut divisions.
//!
//! A division is recorded as the root body plus the ordered list of cuts.
//! Each cut names the current leaf it splits; the left half keeps that
//! index and the right half is inserted right after it, so the leaf list is
//! always the in-order traversal of the underlying binary tree.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{Body, LineCut, Magnitude, Point2};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CutStep {
    pub leaf: usize,
    pub cut: LineCut,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DivisionTree {
    root: Body,
    steps: Vec<CutStep>,
    leaves: Vec<Body>,
    chords: Vec<(Point2, Point2)>,
}

impl DivisionTree {
    pub fn new(root: impl Into<Body>) -> Self {
        let root = root.into();
        DivisionTree { leaves: vec![root.clone()], root, steps: Vec::new(), chords: Vec::new() }
    }

    /// Rebuilds a division by applying `steps` to `root` in order.
    pub fn replay(root: impl Into<Body>, steps: &[CutStep]) -> Result<Self> {
        let mut tree = DivisionTree::new(root);
        for s in steps {
            tree.split(s.leaf, s.cut)?;
        }
        Ok(tree)
    }

    pub fn split(&mut self, leaf: usize, cut: LineCut) -> Result<()> {
        let target = self
            .leaves
            .get(leaf)
            .ok_or_else(|| Error::InvalidArgument(format!("leaf {leaf} does not exist")))?;
        let (left, right) = target.clip(&cut)?;
        let chord = target.chord(&cut).ok_or(Error::CutMissesInterior)?;
        self.leaves[leaf] = left;
        self.leaves.insert(leaf + 1, right);
        self.steps.push(CutStep { leaf, cut });
        self.chords.push(chord);
        Ok(())
    }

    pub fn root(&self) -> &Body {
        &self.root
    }

    pub fn leaves(&self) -> &[Body] {
        &self.leaves
    }

    pub fn steps(&self) -> &[CutStep] {
        &self.steps
    }

    /// The chord drawn by each cut inside the leaf it split.
    pub fn chords(&self) -> &[(Point2, Point2)] {
        &self.chords
    }

    pub fn leaf_count(&self) -> usize {
        self.leaves.len()
    }

    pub fn leaf_values(&self, m: Magnitude) -> Result<Vec<f64>> {
        self.leaves.iter().map(|l| l.magnitude(m)).collect()
    }

    /// Index of the polygonal leaf containing `p` in its interior, if any.
    pub(crate) fn leaf_containing(&self, p: Point2) -> Option<usize> {
        self.leaves.iter().position(|l| match l {
            Body::Polygon(poly) => poly.contains(p, -1e-12 * poly.diagonal()),
            Body::Arcs(_) => false,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{ConvexPolygon, Direction};

    #[test]
    fn successive_cuts_keep_in_order_leaves() {
        let mut t = DivisionTree::new(ConvexPolygon::rectangle(3.0, 1.0).unwrap());
        let x = Direction::from_angle(0.0);
        t.split(0, LineCut::new(x, 2.0)).unwrap();
        t.split(0, LineCut::new(x, 1.0)).unwrap();
        assert_eq!(t.leaf_count(), 3);
        assert_eq!(t.steps().len(), 2);
        let areas: Vec<f64> = t.leaves().iter().map(|l| l.area()).collect();
        for a in areas {
            assert!((a - 1.0).abs() < 1e-12);
        }
        let centers: Vec<f64> = t.leaves().iter().map(|l| l.extent(x).0).collect();
        assert!(centers.windows(2).all(|w| w[0] < w[1]));
        let again = DivisionTree::replay(t.root().clone(), t.steps()).unwrap();
        assert_eq!(again, t);
    }

    #[test]
    fn bad_leaf_index_is_rejected() {
        let mut t = DivisionTree::new(ConvexPolygon::rectangle(1.0, 1.0).unwrap());
        assert!(t.split(3, LineCut::new(Direction::from_angle(0.0), 0.5)).is_err());
        assert_eq!(
            t.split(0, LineCut::new(Direction::from_angle(0.0), 5.0)),
            Err(Error::CutMissesInterior)
        );
    }
}
