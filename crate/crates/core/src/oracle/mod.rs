//! Independent verification engines.
//!
//! None of these routines call the Bessel machinery used by the analytic
//! modules except through the integrand they are handed, so agreement with
//! [`crate::scattering`] and [`crate::spectrum`] is a genuine cross-check.

mod contour;
mod numerov;
mod quadrature;

pub use contour::{circle_integral, contour_residue, ContourSpec, DEFAULT_CONTOUR_NODES};
pub use numerov::{
    eigenfunction_nodes, numerov_integrate, shooting_eigenvalues, shooting_mismatch, NumerovGrid,
    RadialSamples,
};
pub use quadrature::{adaptive_quadrature, adaptive_quadrature_with_estimate, QuadratureEstimate};
