use thiserror::Error;

/// Errors raised by the geometry kernel and the solvers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("polygon needs at least 3 distinct vertices, got {0}")]
    TooFewVertices(usize),
    #[error("vertex list does not describe a convex polygon")]
    NotConvex,
    #[error("polygon has no interior")]
    DegenerateArea,
    #[error("coordinates must be finite")]
    NonFinite,
    #[error("cut line does not cross the interior of the region")]
    CutMissesInterior,
    #[error("tolerance {tol:e} not reached after {iterations} iterations")]
    ToleranceNotReached { tol: f64, iterations: usize },
    #[error("rounding radius {rho} outside [0, {max}]")]
    RhoOutOfRange { rho: f64, max: f64 },
    #[error("relative width is not affine on [{lo}, {hi}]")]
    NotAffineBetweenBreakpoints { lo: f64, hi: f64 },
    #[error("side {side}: the side equation has no root in (0, inradius]")]
    NoRootInRange { side: usize },
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error("no optimal {n}-division exists (largest feasible n is {max_n})")]
    InfeasibleN { n: usize, max_n: usize },
    #[error("construction failed: {0}")]
    ConstructionFailed(String),
    #[error("schema error: {0}")]
    Schema(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
