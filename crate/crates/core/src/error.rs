use crate::specfun::ComplexScalar;

/// Failure modes shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("gamma-function pole: {0} is a non-positive integer")]
    PoleAtNonPositiveInteger(ComplexScalar),

    #[error("series did not converge within {max_terms} terms")]
    SeriesNotConverged { max_terms: usize },

    #[error("argument {0} is below the smallest supported value")]
    DomainTooSmall(f64),

    #[error("argument {0} would overflow a double")]
    Overflow(f64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("k = {k} lies within the guard radius of the singular point k = {nearest}")]
    PoleProximity {
        k: ComplexScalar,
        nearest: ComplexScalar,
    },

    #[error("the S-matrix is not evaluated at k = 0")]
    EvaluationAtOrigin,

    #[error("irregular solution is singular at i*rho = {n}")]
    SingularAtRedundantZeroPoint { n: i64 },

    #[error("phase unwrapping is ambiguous between grid points {index} and {} (jump {jump})", index + 1)]
    UnwrapAmbiguity { index: usize, jump: f64 },

    #[error("kappa = {kappa} is not a bound state (|J| = {residual:e})")]
    NotABoundState { kappa: f64, residual: f64 },

    #[error("zero of J at kappa = {kappa} is not simple")]
    DegenerateZero { kappa: f64 },

    #[error("redundant pole n = {n} coincides with a physical bound state")]
    CoincidentPhysicalPole { n: u32 },

    #[error("residue is not real: {value}")]
    ComplexResidue { value: ComplexScalar },

    #[error("shooting scan is too coarse to separate the eigenvalues")]
    GridTooCoarse,

    #[error("adaptive quadrature exceeded {intervals} subintervals (error estimate {estimate:e})")]
    MaxDepthExceeded { intervals: usize, estimate: f64 },

    #[error("integrand is singular on the contour (node {node})")]
    PoleOnContour { node: usize },

    #[error("probe contour found another singularity nearby (inner {inner}, outer {outer})")]
    ProbeFailure {
        inner: ComplexScalar,
        outer: ComplexScalar,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
