//! The exponential-potential model and its analytic scattering objects.
//!
//! With `nu = i rho = 2 a i k` and `x = alpha exp(-r/(2a))`:
//!
//! - `S(k) = J_{nu}(alpha) Gamma(1+nu) / [J_{-nu}(alpha) Gamma(1-nu)] (alpha/2)^(-2 nu)`
//! - `F+(k) = 0F1(1 - nu; -alpha^2/4)`, `F-(k) = 0F1(1 + nu; -alpha^2/4)`
//! - `f+(k, r) = Gamma(1-nu) (alpha/2)^nu J_{-nu}(x)`, `f-` with `nu -> -nu`
//! - `phi(r) = pi a [Y_nu(alpha) J_nu(x) - J_nu(alpha) Y_nu(x)]`

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::specfun::{
    bessel_j_cx_order, bessel_j_with_derivative, bessel_y_cx_order, gamma_cx, hyp0f1,
    nearest_integer, richardson_limit, ComplexScalar, SeriesPolicy,
};

/// Guard radius, in `i rho`, around the integer points where `S` has a
/// redundant pole or zero.
pub const POLE_GUARD: f64 = 1e-9;

/// Below this distance from an integer `i rho` the regular solution is built
/// from the `{J, Y}` pair instead of the `0F1` products.
const PHI_SWITCH: f64 = 0.05;

/// Beyond this `|i rho|` the Bessel and Gamma factors of `S` leave the
/// double range and the Jost ratio `F-/F+` is used instead.
const LARGE_ORDER: f64 = 100.0;

/// `|J_n(alpha)|` below which the pole at `k_n` is treated as physical.
pub const COINCIDENCE_TOL: f64 = 1e-10;

/// Dimensionless data of the potential `V(r) = -V0 exp(-r/a)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    a: f64,
    alpha: f64,
}

impl ModelParams {
    pub fn new(a: f64, alpha: f64) -> Result<Self> {
        if !(a > 0.0 && a.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "a must be positive, got {a}"
            )));
        }
        if !(alpha > 0.0 && alpha.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "alpha must be positive, got {alpha}"
            )));
        }
        Ok(Self { a, alpha })
    }

    /// Range parameter `a`.
    pub fn a(&self) -> f64 {
        self.a
    }

    /// `alpha = 2 a sqrt(U0)`.
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Potential strength `U0 = alpha^2 / (4 a^2)`.
    pub fn u0(&self) -> f64 {
        self.alpha * self.alpha / (4.0 * self.a * self.a)
    }

    /// `i rho = 2 a i k`, the Bessel order belonging to momentum `k`.
    pub fn order(&self, k: ComplexScalar) -> ComplexScalar {
        ComplexScalar::new(0.0, 2.0 * self.a) * k
    }

    /// Momentum of the `n`-th redundant pole, `k_n = i n / (2a)`.
    pub fn redundant_pole(&self, n: i64) -> ComplexScalar {
        ComplexScalar::new(0.0, n as f64 / (2.0 * self.a))
    }

    fn ln_half_alpha(&self) -> f64 {
        (0.5 * self.alpha).ln()
    }

    fn z_alpha(&self) -> ComplexScalar {
        ComplexScalar::new(-0.25 * self.alpha * self.alpha, 0.0)
    }
}

/// Complex momentum together with the range it belongs to.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Momentum {
    pub k: ComplexScalar,
    a: f64,
}

impl Momentum {
    pub fn new(params: &ModelParams, k: ComplexScalar) -> Self {
        Self { k, a: params.a }
    }

    /// Dimensionless momentum `rho = 2 a k`.
    pub fn rho(&self) -> ComplexScalar {
        2.0 * self.a * self.k
    }
}

/// A radial position with its Bessel-variable image.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialPoint {
    pub r: f64,
}

impl RadialPoint {
    pub fn new(r: f64) -> Result<Self> {
        if !(r >= 0.0 && r.is_finite()) {
            return Err(Error::InvalidArgument(format!("r must be >= 0, got {r}")));
        }
        Ok(Self { r })
    }

    /// `sigma = exp(-r/a)`.
    pub fn sigma(&self, params: &ModelParams) -> f64 {
        (-self.r / params.a).exp()
    }

    /// `x = alpha exp(-r/(2a))`; equals `alpha` exactly at `r = 0`.
    pub fn x(&self, params: &ModelParams) -> f64 {
        params.alpha * (-self.r / (2.0 * params.a)).exp()
    }
}

fn policy() -> SeriesPolicy {
    SeriesPolicy::default()
}

/// S-matrix from the closed Bessel-Gamma form, or from the equivalent Jost
/// ratio once `|i rho| > 100`.
///
/// Returns [`Error::PoleProximity`] within [`POLE_GUARD`] of a nonzero integer
/// `i rho` (redundant pole for negative, redundant zero for positive integers).
pub fn s_matrix(params: &ModelParams, k: ComplexScalar) -> Result<ComplexScalar> {
    if k == ComplexScalar::new(0.0, 0.0) {
        return Err(Error::EvaluationAtOrigin);
    }
    let nu = params.order(k);
    let (n, dist) = nearest_integer(nu);
    if n != 0 && dist < POLE_GUARD {
        return Err(Error::PoleProximity {
            k,
            nearest: params.redundant_pole(-n),
        });
    }
    if nu.norm() > LARGE_ORDER {
        return Ok(jost(params, k, -1.0)? / jost(params, k, 1.0)?);
    }
    let alpha = params.alpha;
    let pol = policy();
    // Each bracket is O(1); pairing J with its Gamma factor keeps the
    // exponentially large and small pieces from meeting separately.
    let upper = bessel_j_cx_order(nu, alpha, &pol)? * gamma_cx(1.0 + nu)?;
    let lower = bessel_j_cx_order(-nu, alpha, &pol)? * gamma_cx(1.0 - nu)?;
    let power = (-2.0 * nu * params.ln_half_alpha()).exp();
    Ok(upper / lower * power)
}

/// `0F1(1 - sign*nu; -alpha^2/4)`: `F+` for `sign = 1`, `F-` for `sign = -1`.
fn jost(params: &ModelParams, k: ComplexScalar, sign: f64) -> Result<ComplexScalar> {
    let nu = sign * params.order(k);
    let b = 1.0 - nu;
    let z = params.z_alpha();
    let (m, dist) = nearest_integer(nu);
    if m >= 1 && dist < POLE_GUARD {
        // The pole of 0F1 cancels only when J_m(alpha) = 0.
        let j_m = bessel_j_cx_order(ComplexScalar::new(m as f64, 0.0), params.alpha, &policy())?;
        if j_m.norm() >= COINCIDENCE_TOL {
            return Err(Error::PoleProximity {
                k,
                nearest: params.redundant_pole(-(sign as i64) * m),
            });
        }
        return richardson_limit(b, 1e-2, |bb| hyp0f1(bb, z));
    }
    hyp0f1(b, z)
}

/// Jost function `F+(k) = W{f+, phi} = 0F1(1 - i rho; -alpha^2/4)`.
///
/// At `i rho = n >= 1` the series has a pole unless `J_n(alpha) = 0`, in which
/// case the finite limiting value is returned.
pub fn jost_plus(params: &ModelParams, k: ComplexScalar) -> Result<ComplexScalar> {
    jost(params, k, 1.0)
}

/// Complementary Jost function `F-(k) = 0F1(1 + i rho; -alpha^2/4)`; poles at
/// the redundant points `k_n = i n / (2a)`.
pub fn jost_minus(params: &ModelParams, k: ComplexScalar) -> Result<ComplexScalar> {
    jost(params, k, -1.0)
}

/// `F+(k)` from the Bessel form `J_{-i rho}(alpha) Gamma(1 - i rho) (alpha/2)^(i rho)`.
pub fn jost_plus_bessel_form(params: &ModelParams, k: ComplexScalar) -> Result<ComplexScalar> {
    let nu = params.order(k);
    let j = bessel_j_cx_order(-nu, params.alpha, &policy())?;
    Ok(j * gamma_cx(1.0 - nu)? * (nu * params.ln_half_alpha()).exp())
}

/// `F-(k)` from the Bessel form `J_{i rho}(alpha) Gamma(1 + i rho) (alpha/2)^(-i rho)`.
pub fn jost_minus_bessel_form(params: &ModelParams, k: ComplexScalar) -> Result<ComplexScalar> {
    let nu = params.order(k);
    let j = bessel_j_cx_order(nu, params.alpha, &policy())?;
    Ok(j * gamma_cx(1.0 + nu)? * (-nu * params.ln_half_alpha()).exp())
}

fn regular_solution_unchecked(
    params: &ModelParams,
    k: ComplexScalar,
    r: f64,
) -> Result<ComplexScalar> {
    let nu = params.order(k);
    let alpha = params.alpha;
    let x = alpha * (-r / (2.0 * params.a)).exp();
    let pol = policy();
    let (_, dist) = nearest_integer(nu);
    if dist < PHI_SWITCH {
        let y_alpha = bessel_y_cx_order(nu, alpha, &pol)?;
        let j_alpha = bessel_j_cx_order(nu, alpha, &pol)?;
        let j_x = bessel_j_cx_order(nu, x, &pol)?;
        let y_x = bessel_y_cx_order(nu, x, &pol)?;
        return Ok(PI * params.a * (y_alpha * j_x - j_alpha * y_x));
    }
    // Away from integer orders the Y functions are eliminated:
    // phi = (a/nu) [ (alpha/x)^nu F(1+nu; za) F(1-nu; zx) - (x/alpha)^nu F(1-nu; za) F(1+nu; zx) ]
    // which avoids the exp(pi |rho|) cancellation of the {J, Y} form.
    let za = params.z_alpha();
    let zx = ComplexScalar::new(-0.25 * x * x, 0.0);
    let phase = (nu * (r / (2.0 * params.a))).exp();
    let first = phase * hyp0f1(1.0 + nu, za)? * hyp0f1(1.0 - nu, zx)?;
    let second = hyp0f1(1.0 - nu, za)? * hyp0f1(1.0 + nu, zx)? / phase;
    Ok(params.a / nu * (first - second))
}

/// Regular solution `phi(r)`, normalised to `phi(0) = 0`, `phi'(0) = 1`.
pub fn regular_solution(params: &ModelParams, k: ComplexScalar, r: f64) -> Result<ComplexScalar> {
    let point = RadialPoint::new(r)?;
    regular_solution_unchecked(params, k, point.r)
}

/// `phi'(0)` from a symmetric five-point stencil with step `1e-3 a`.
pub fn regular_solution_slope_at_origin(
    params: &ModelParams,
    k: ComplexScalar,
) -> Result<ComplexScalar> {
    let h = 1e-3 * params.a;
    let at = |r: f64| regular_solution_unchecked(params, k, r);
    let num = at(-2.0 * h)? - 8.0 * at(-h)? + 8.0 * at(h)? - at(2.0 * h)?;
    Ok(num / (12.0 * h))
}

fn irregular(
    params: &ModelParams,
    k: ComplexScalar,
    r: f64,
    sign: f64,
) -> Result<(ComplexScalar, ComplexScalar)> {
    let point = RadialPoint::new(r)?;
    // sign = +1 for f+, -1 for f-; the Bessel order is -sign * nu.
    let nu = sign * params.order(k);
    let (n, dist) = nearest_integer(nu);
    if n >= 1 && dist < POLE_GUARD {
        return Err(Error::SingularAtRedundantZeroPoint {
            n: (sign as i64) * n,
        });
    }
    let x = point.x(params);
    let (j, dj) = bessel_j_with_derivative(-nu, x, &policy())?;
    let prefactor = gamma_cx(1.0 - nu)? * (nu * params.ln_half_alpha()).exp();
    let dx_dr = -x / (2.0 * params.a);
    Ok((prefactor * j, prefactor * dj * dx_dr))
}

/// Irregular solution `f+(k, r) = Gamma(1 - i rho) (alpha/2)^(i rho) J_{-i rho}(x)`,
/// behaving as `exp(ikr)` for large `r`.
pub fn irregular_solution_plus(
    params: &ModelParams,
    k: ComplexScalar,
    r: f64,
) -> Result<ComplexScalar> {
    irregular(params, k, r, 1.0).map(|p| p.0)
}

/// `(f+(k, r), d f+/dr)`.
pub fn irregular_solution_plus_with_derivative(
    params: &ModelParams,
    k: ComplexScalar,
    r: f64,
) -> Result<(ComplexScalar, ComplexScalar)> {
    irregular(params, k, r, 1.0)
}

/// Irregular solution `f-(k, r) = Gamma(1 + i rho) (alpha/2)^(-i rho) J_{i rho}(x)`,
/// behaving as `exp(-ikr)`; singular at the redundant poles `k_n`.
pub fn irregular_solution_minus(
    params: &ModelParams,
    k: ComplexScalar,
    r: f64,
) -> Result<ComplexScalar> {
    irregular(params, k, r, -1.0).map(|p| p.0)
}

/// `(f-(k, r), d f-/dr)`.
pub fn irregular_solution_minus_with_derivative(
    params: &ModelParams,
    k: ComplexScalar,
    r: f64,
) -> Result<(ComplexScalar, ComplexScalar)> {
    irregular(params, k, r, -1.0)
}

/// Wronskian `W_r{f+, f-} = f+ f-' - f+' f-` evaluated at radius `r`.
pub fn irregular_wronskian(
    params: &ModelParams,
    k: ComplexScalar,
    r: f64,
) -> Result<ComplexScalar> {
    let (fp, dfp) = irregular_solution_plus_with_derivative(params, k, r)?;
    let (fm, dfm) = irregular_solution_minus_with_derivative(params, k, r)?;
    Ok(fp * dfm - dfp * fm)
}

/// Largest jump between neighbouring grid points accepted by the unwrapper.
const UNWRAP_LIMIT: f64 = 0.45 * PI;

/// Phase shift `delta(k)` on an ascending grid of positive momenta, from
/// `S = exp(2 i delta)`, unwrapped from the largest `k` downwards with the
/// branch at the top of the grid chosen closest to zero.
pub fn phase_shift(params: &ModelParams, k_grid: &[f64]) -> Result<Vec<f64>> {
    if k_grid.is_empty() {
        return Ok(Vec::new());
    }
    if k_grid[0] <= 0.0 || k_grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidArgument(
            "k grid must be positive and strictly ascending".into(),
        ));
    }
    let raw = k_grid
        .iter()
        .map(|&k| s_matrix(params, ComplexScalar::new(k, 0.0)).map(|s| 0.5 * s.arg()))
        .collect::<Result<Vec<_>>>()?;

    let mut delta = vec![0.0; raw.len()];
    let last = raw.len() - 1;
    delta[last] = raw[last];
    for i in (0..last).rev() {
        let prev = delta[i + 1];
        let shift = ((prev - raw[i]) / PI).round();
        let value = raw[i] + shift * PI;
        let jump = value - prev;
        if jump.abs() > UNWRAP_LIMIT {
            return Err(Error::UnwrapAmbiguity { index: i, jump });
        }
        delta[i] = value;
    }
    Ok(delta)
}

/// `(1/2i) Log S(k)` without unwrapping; its imaginary part measures the
/// departure from unitarity.
pub fn half_log_s(params: &ModelParams, k: f64) -> Result<ComplexScalar> {
    let s = s_matrix(params, ComplexScalar::new(k, 0.0))?;
    Ok(s.ln() / ComplexScalar::new(0.0, 2.0))
}

/// Distance in `k` to the closest redundant pole or zero `+-k_n`.
pub fn nearest_redundant_point(params: &ModelParams, k: ComplexScalar) -> (ComplexScalar, f64) {
    let nu = params.order(k);
    let mut n = nu.re.round() as i64;
    if n == 0 {
        n = if nu.re >= 0.0 { 1 } else { -1 };
    }
    let point = params.redundant_pole(-n);
    (point, (k - point).norm())
}
