//! Special-functions kernel.
//!
//! Everything here is a pure function of its arguments. Bessel functions take
//! a complex order and a strictly positive real argument; the complex power
//! `(x/2)^nu` is always `exp(nu * ln(x/2))` with the real logarithm.

mod bessel;
mod gamma;
mod hypergeometric;

pub(crate) use bessel::richardson_limit;
pub use bessel::{
    bessel_i1, bessel_j_cx_order, bessel_j_order_derivative, bessel_j_real_order,
    bessel_j_with_derivative, bessel_y_cx_order, bessel_y_with_derivative,
};
pub use gamma::{cos_pi, digamma_cx, gamma_cx, gamma_residue_at, rgamma_cx, sin_pi, EULER_GAMMA};
pub use hypergeometric::{hyp0f1, hyp0f1_with_policy};

use crate::error::{Error, Result};

/// Complex scalar used throughout the crate.
pub type ComplexScalar = num_complex::Complex64;

/// Truncation rule for the power series in this module.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesPolicy {
    pub rel_tol: f64,
    pub max_terms: usize,
}

impl SeriesPolicy {
    pub fn new(rel_tol: f64, max_terms: usize) -> Result<Self> {
        if !(rel_tol > 0.0 && rel_tol < 1.0) {
            return Err(Error::InvalidArgument(format!(
                "rel_tol must lie in (0, 1), got {rel_tol}"
            )));
        }
        if max_terms < 50 {
            return Err(Error::InvalidArgument(format!(
                "max_terms must be at least 50, got {max_terms}"
            )));
        }
        Ok(Self { rel_tol, max_terms })
    }
}

impl Default for SeriesPolicy {
    fn default() -> Self {
        Self {
            rel_tol: 1e-15,
            max_terms: 500,
        }
    }
}

/// Distance from `z` to the nearest integer, together with that integer.
pub fn nearest_integer(z: ComplexScalar) -> (i64, f64) {
    let n = z.re.round();
    ((n as i64), (z - n).norm())
}

/// Stops a series once three consecutive terms fall below the tolerance.
#[derive(Debug)]
pub(crate) struct Truncation {
    rel_tol: f64,
    quiet: u32,
    peak: f64,
}

impl Truncation {
    pub(crate) fn new(policy: &SeriesPolicy) -> Self {
        Self {
            rel_tol: policy.rel_tol,
            quiet: 0,
            peak: 0.0,
        }
    }

    /// Feed the magnitude of the latest term and of the partial sum; returns
    /// `true` once the series may be cut.
    pub(crate) fn done(&mut self, term: f64, sum: f64) -> bool {
        self.peak = self.peak.max(term);
        // The second test covers partial sums that cancel to (near) zero.
        if term <= self.rel_tol * sum || term <= 1e-3 * f64::EPSILON * self.peak {
            self.quiet += 1;
        } else {
            self.quiet = 0;
        }
        self.quiet >= 3
    }
}
