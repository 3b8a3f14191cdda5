//! S-wave scattering by the exponentially decaying potential
//! `V(r) = -V0 exp(-r/a)`.
//!
//! The radial equation `u'' + [k^2 + U0 exp(-r/a)] u = 0` is solved by Bessel
//! functions of imaginary order `i*rho`, `rho = 2ak`, in the variable
//! `x = alpha * exp(-r/(2a))`, `alpha = 2a sqrt(U0)`. Units are fixed by
//! `2m/hbar^2 = 1`, so `(a, alpha)` are the only parameters.
//!
//! Modules:
//!
//! - [`specfun`]: complex Gamma, digamma, Bessel J/Y of complex order, `I1`, `0F1`.
//! - [`scattering`]: the S-matrix, Jost functions, regular and irregular solutions,
//!   phase shift.
//! - [`spectrum`]: bound states, normalization constants, residues at physical and
//!   redundant poles, the Heisenberg-condition report.
//! - [`oracle`]: Numerov integration, shooting, adaptive quadrature and contour
//!   integration used to check everything above independently.

pub mod error;
pub mod oracle;
pub mod scattering;
pub mod specfun;
pub mod spectrum;

pub use error::{Error, Result};
pub use scattering::ModelParams;

pub use specfun::ComplexScalar;
