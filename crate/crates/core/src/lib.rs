//! Optimal divisions of planar convex bodies by successive straight cuts.
//!
//! The solvers cover the min-Max problem (make the largest piece as small as
//! possible) and the Max-min problem (make the smallest piece as large as
//! possible) for diameter, width and inradius. Brute-force searches in
//! [`oracle`] check them independently.

pub mod cli;
pub mod corpus;
pub mod division;
pub mod error;
pub mod geometry;
pub mod io;
pub mod maxmin;
pub mod medial;
pub mod minmax;
pub mod oracle;
pub mod report;
pub mod svg;

pub use error::{Error, Result};
