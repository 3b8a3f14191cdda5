//! Bound states, normalisation constants and S-matrix residues.
//!
//! A bound state `k_l = i kappa_l` is a zero of `J_{2a kappa}(alpha)` in the
//! order. The Heisenberg condition compares `2 pi i Res_k S(k_l)` with the
//! asymptotic normalisation `|C_l|^2`; their ratio is reported as `R_H`.
//!
//! The redundant poles `k_n = i n / (2a)` carry the residue
//! `2 pi i Res_k S(k_n) = -(pi/a) (alpha/2)^{2n} / (n! (n-1)!)`. The sign is
//! negative: `Gamma(1 + i rho)` has residue `(-1)^{n-1}/(n-1)!` in `i rho`
//! and `J_{-n} = (-1)^n J_n`, which leaves an overall `-1` after the factor
//! `d(i rho)/dk = 2ai`. [`redundant_residue_magnitude`] gives the unsigned
//! value.
//!
//! The series `(pi/a) sum_n q^{2n} / (n! (n-1)!)` over the magnitudes sums to
//! `(pi/a) q I_1(2q)`, not `(pi/a) q I_1(q)`: with `I_1(z) = sum_m
//! (z/2)^{2m+1} / (m! (m+1)!)` the term `q^{2n}` requires `z/2 = q`.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::oracle::{contour_residue, ContourSpec};
use crate::scattering::{jost_minus, jost_plus, ModelParams, COINCIDENCE_TOL};
use crate::specfun::{
    bessel_i1, bessel_j_cx_order, bessel_j_order_derivative, bessel_j_real_order, gamma_cx,
    nearest_integer, richardson_limit, sin_pi, ComplexScalar, SeriesPolicy,
};

/// Bracketing step of the root scan, in units of `1/a`.
const SCAN_STEP: f64 = 0.01;
/// Bisection stops once the bracket is narrower than this, in units of `1/a`.
const ROOT_TOL: f64 = 1e-13;
/// `|J_{2a kappa}(alpha)|` accepted as a zero by the public entry points.
const ZERO_TOL: f64 = 1e-9;
/// Below this distance from an integer order the factor
/// `J_{-nu}(alpha) Gamma(1 - nu)` is taken as a limit.
const INTEGER_ORDER_RADIUS: f64 = 1e-6;
const LIMIT_DELTA: f64 = 1e-2;

fn c(re: f64) -> ComplexScalar {
    ComplexScalar::new(re, 0.0)
}

fn j_real(nu: f64, x: f64) -> Result<f64> {
    bessel_j_real_order(nu, x)
}

fn gamma_real(x: f64) -> Result<f64> {
    gamma_cx(c(x)).map(|g| g.re)
}

/// A normalisable solution at `k = i kappa`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundState {
    pub kappa: f64,
    /// `2 a kappa`, the Bessel order at the zero.
    pub nu: f64,
    /// `int_0^inf J_nu(x(r))^2 dr`.
    pub norm_integral: f64,
    /// `|C_l|^2`.
    pub c_l_squared: f64,
    /// `2 pi i Res_k S(i kappa)` from the analytic residue.
    pub residue_lhs: f64,
    /// Signed residue of the redundant pole merged into this one when
    /// `2 a kappa` is an integer `n` with `J_n(alpha) = 0`; zero otherwise.
    pub redundant_share: f64,
}

impl BoundState {
    /// Completes the record for a zero `kappa` of `J_{2a kappa}(alpha)`.
    pub fn at(p: &ModelParams, kappa: f64) -> Result<Self> {
        check_bound_state(p, kappa)?;
        let nu = 2.0 * p.a() * kappa;
        let norm_integral = bound_state_norm_integral(p, kappa)?;
        let mut bs = Self {
            kappa,
            nu,
            norm_integral,
            c_l_squared: 0.0,
            residue_lhs: 0.0,
            redundant_share: 0.0,
        };
        bs.c_l_squared = c_l_squared(p, &bs)?;
        bs.residue_lhs = bound_residue_analytic(p, &bs)?;
        if let Some(n) = coincident_order(p, nu)? {
            bs.redundant_share = -redundant_residue_magnitude(p, n)?;
        }
        Ok(bs)
    }

    /// Bound-state momentum `i kappa`.
    pub fn k(&self) -> ComplexScalar {
        ComplexScalar::new(0.0, self.kappa)
    }

    /// `R_H = (residue_lhs - redundant_share) / c_l_squared`.
    pub fn heisenberg_ratio(&self) -> f64 {
        (self.residue_lhs - self.redundant_share) / self.c_l_squared
    }
}

fn check_bound_state(p: &ModelParams, kappa: f64) -> Result<()> {
    if !(kappa > 0.0) {
        return Err(Error::NotABoundState {
            kappa,
            residual: f64::NAN,
        });
    }
    let residual = j_real(2.0 * p.a() * kappa, p.alpha())?.abs();
    if residual >= ZERO_TOL {
        return Err(Error::NotABoundState { kappa, residual });
    }
    Ok(())
}

/// Zeros `kappa` of `J_{2a kappa}(alpha)` in `(0, alpha/(2a) + 0.5/a]`,
/// sorted descending.
pub fn bound_state_kappas(p: &ModelParams) -> Result<Vec<f64>> {
    let (a, alpha) = (p.a(), p.alpha());
    let g = |kappa: f64| j_real(2.0 * a * kappa, alpha);
    let dk = SCAN_STEP / a;
    let top = alpha / (2.0 * a) + 0.5 / a;
    let steps = (top / dk).ceil() as usize;
    let mut roots = Vec::new();
    let mut lo = 0.0;
    let mut g_lo = g(lo)?;
    for j in 1..=steps {
        let hi = j as f64 * dk;
        let g_hi = g(hi)?;
        if g_hi == 0.0 {
            roots.push(hi);
        } else if g_lo != 0.0 && g_lo.signum() != g_hi.signum() {
            let (mut l, mut h) = (lo, hi);
            while h - l > ROOT_TOL / a {
                let mid = 0.5 * (l + h);
                let g_mid = g(mid)?;
                if g_mid == 0.0 {
                    l = mid;
                    h = mid;
                } else if g_mid.signum() == g_lo.signum() {
                    l = mid;
                } else {
                    h = mid;
                }
            }
            roots.push(0.5 * (l + h));
        }
        lo = hi;
        g_lo = g_hi;
    }
    roots.sort_by(|x, y| y.total_cmp(x));
    Ok(roots)
}

/// All bound states, sorted by descending `kappa`.
pub fn find_bound_states(p: &ModelParams) -> Result<Vec<BoundState>> {
    bound_state_kappas(p)?
        .into_iter()
        .map(|kappa| BoundState::at(p, kappa))
        .collect()
}

/// Closed form `(alpha/(2 kappa)) J_{nu+1}(alpha) dJ_nu(alpha)/dnu` of
/// `int_0^inf J_nu(x(r))^2 dr` at a bound state, `nu = 2 a kappa`.
pub fn bound_state_norm_integral(p: &ModelParams, kappa: f64) -> Result<f64> {
    check_bound_state(p, kappa)?;
    let alpha = p.alpha();
    let nu = 2.0 * p.a() * kappa;
    let dj = bessel_j_order_derivative(nu, alpha)?;
    Ok(alpha / (2.0 * kappa) * j_real(nu + 1.0, alpha)? * dj)
}

/// `|C_l|^2 = 2 pi (alpha/2)^{2 nu} / (Gamma(1 + nu)^2 N)`, with `N` the
/// norm integral.
pub fn c_l_squared(p: &ModelParams, bs: &BoundState) -> Result<f64> {
    check_bound_state(p, bs.kappa)?;
    let nu = 2.0 * p.a() * bs.kappa;
    let norm = bound_state_norm_integral(p, bs.kappa)?;
    let g = gamma_real(1.0 + nu)?;
    Ok(2.0 * PI * (2.0 * nu * (0.5 * p.alpha()).ln()).exp() / (g * g * norm))
}

/// The integer `n` when `nu` sits on the redundant pole `k_n` and that pole
/// is physical.
fn coincident_order(p: &ModelParams, nu: f64) -> Result<Option<u32>> {
    let (n, dist) = nearest_integer(c(nu));
    if n >= 1 && dist < INTEGER_ORDER_RADIUS && j_real(n as f64, p.alpha())?.abs() < COINCIDENCE_TOL
    {
        return Ok(Some(n as u32));
    }
    Ok(None)
}

/// `J_{-nu}(alpha) Gamma(1 - nu)`, continued through a coincident integer
/// order where it is a `0 * inf` product.
fn reflected_factor(p: &ModelParams, nu: f64) -> Result<ComplexScalar> {
    let alpha = p.alpha();
    let f = |v: ComplexScalar| -> Result<ComplexScalar> {
        Ok(bessel_j_cx_order(-v, alpha, &SeriesPolicy::default())? * gamma_cx(1.0 - v)?)
    };
    if coincident_order(p, nu)?.is_some() {
        richardson_limit(c(nu), LIMIT_DELTA, f)
    } else {
        f(c(nu))
    }
}

/// `2 pi i Res_k S(i kappa)` at a bound state,
/// `-(pi/a) J_{-nu}(alpha) Gamma(1 - nu) (alpha/2)^{2nu} / (Gamma(1 + nu) dJ_nu(alpha)/dnu)`.
///
/// When the bound state sits on a redundant pole (`nu = n`) the factor
/// `J_{-nu} Gamma(1 - nu)` is an indeterminate product and is replaced by
/// its limit. The value is then the residue of the merged pole, which
/// exceeds `|C_l|^2` by the redundant residue recorded in
/// [`BoundState::redundant_share`].
pub fn bound_residue_analytic(p: &ModelParams, bs: &BoundState) -> Result<f64> {
    check_bound_state(p, bs.kappa)?;
    let (a, alpha) = (p.a(), p.alpha());
    let nu = 2.0 * a * bs.kappa;
    let dj = bessel_j_order_derivative(nu, alpha)?;
    if dj.abs() < 1e-12 {
        return Err(Error::DegenerateZero { kappa: bs.kappa });
    }
    let two_pi_i = ComplexScalar::new(0.0, 2.0 * PI);
    let res_inverse_j = ComplexScalar::new(0.0, 1.0 / (2.0 * a * dj));
    let power = (2.0 * nu * (0.5 * alpha).ln()).exp();
    let value = two_pi_i * reflected_factor(p, nu)? * power / gamma_real(1.0 + nu)? * res_inverse_j;
    if value.im.abs() > 1e-10 * value.norm() {
        return Err(Error::ComplexResidue { value });
    }
    Ok(value.re)
}

/// Residual `J_{-nu}(alpha) J_{nu+1}(alpha) + 2 sin(nu pi)/(pi alpha)` with
/// `nu = 2 a kappa`. It vanishes at bound states and nowhere in particular
/// otherwise.
pub fn reduced_identity_check(p: &ModelParams, kappa: f64) -> Result<f64> {
    let alpha = p.alpha();
    let nu = 2.0 * p.a() * kappa;
    let lhs =
        bessel_j_cx_order(c(-nu), alpha, &SeriesPolicy::default())?.re * j_real(nu + 1.0, alpha)?;
    let rhs = -2.0 * sin_pi(c(nu)).re / (PI * alpha);
    Ok(lhs - rhs)
}

/// `(pi/a) (alpha/2)^{2n} / (n! (n-1)!)`.
pub fn redundant_residue_magnitude(p: &ModelParams, n: u32) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "redundant poles start at n = 1".into(),
        ));
    }
    let nf = n as f64;
    let ln_fact = |m: u32| (1..=m).map(|j| (j as f64).ln()).sum::<f64>();
    let ln = 2.0 * nf * (0.5 * p.alpha()).ln() - ln_fact(n) - ln_fact(n - 1);
    Ok(PI / p.a() * ln.exp())
}

/// `2 pi i Res_k S(k_n) = -(pi/a) (alpha/2)^{2n} / (n! (n-1)!)` at the
/// redundant pole `k_n = i n/(2a)`.
pub fn redundant_residue_analytic(p: &ModelParams, n: u32) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "redundant poles start at n = 1".into(),
        ));
    }
    if j_real(n as f64, p.alpha())?.abs() < COINCIDENCE_TOL {
        return Err(Error::CoincidentPhysicalPole { n });
    }
    Ok(-redundant_residue_magnitude(p, n)?)
}

/// Redundant pole with its residue from the closed form and from a contour.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RedundantPole {
    pub n: u32,
    pub k_n: ComplexScalar,
    pub residue_analytic: f64,
    pub residue_contour: f64,
}

impl RedundantPole {
    /// Relative difference of the two residue values.
    pub fn discrepancy(&self) -> f64 {
        (self.residue_contour - self.residue_analytic).abs() / self.residue_analytic.abs()
    }
}

fn bound_state_poles(kappas: &[f64]) -> Vec<ComplexScalar> {
    kappas
        .iter()
        .flat_map(|&k| [ComplexScalar::new(0.0, k), ComplexScalar::new(0.0, -k)])
        .collect()
}

/// Both residue values at `k_n`; the contour radius avoids every bound
/// state of `p`.
pub fn redundant_pole(p: &ModelParams, n: u32) -> Result<RedundantPole> {
    let residue_analytic = redundant_residue_analytic(p, n)?;
    let k_n = p.redundant_pole(n as i64);
    let others = bound_state_poles(&bound_state_kappas(p)?);
    let spec = ContourSpec::around(p, k_n, &others)?;
    let integral = contour_residue(p, &spec)?;
    Ok(RedundantPole {
        n,
        k_n,
        residue_analytic,
        residue_contour: real_part_checked(integral)?,
    })
}

/// Contour values are sums of O(1) samples of `S`, so their imaginary part
/// carries an absolute roundoff floor besides the relative one.
fn real_part_checked(value: ComplexScalar) -> Result<f64> {
    if value.im.abs() > 1e-10 * value.norm() + 1e-14 {
        return Err(Error::ComplexResidue { value });
    }
    Ok(value.re)
}

/// Sum of the redundant-pole residue magnitudes weighted by
/// `exp(-n (r + r')/(2a))`: returns the partial sum over `terms` poles and
/// the closed form `(pi/a) q I_1(2q)`, `q = (alpha/2) exp(-(r + r')/(4a))`.
pub fn redundant_pole_sum(p: &ModelParams, r_plus_rprime: f64, terms: u32) -> Result<(f64, f64)> {
    if !(r_plus_rprime > 0.0) || terms == 0 {
        return Err(Error::InvalidArgument(
            "redundant sum needs r + r' > 0 and at least one term".into(),
        ));
    }
    let q = 0.5 * p.alpha() * (-r_plus_rprime / (4.0 * p.a())).exp();
    let q2 = q * q;
    let mut term = q2; // n = 1: q^2 / (1! 0!)
    let mut partial = 0.0;
    for n in 1..=terms {
        if n > 1 {
            term *= q2 / (n as f64 * (n - 1) as f64);
        }
        partial += term;
    }
    let scale = PI / p.a();
    Ok((scale * partial, scale * q * bessel_i1(2.0 * q)?))
}

/// `ln[2 (2n)!! / ((2n-1)!! sqrt(2 pi (2n+1)))]`.
fn ln_large_order_asymptote(n: u32) -> f64 {
    let ratio: f64 = (1..=n)
        .map(|j| (2.0 * j as f64).ln() - (2.0 * j as f64 - 1.0).ln())
        .sum();
    2f64.ln() + ratio - 0.5 * (2.0 * PI * (2.0 * n as f64 + 1.0)).ln()
}

/// `S` on the sequence `k = i (n + 1/2)/(2a)` next to its large-`n`
/// asymptote `2 (2n)!! / ((2n-1)!! sqrt(2 pi (2n+1)))`.
pub fn large_n_limit_check(p: &ModelParams, n: u32) -> Result<(f64, f64)> {
    if n == 0 {
        return Err(Error::InvalidArgument("sequence starts at n = 1".into()));
    }
    let k = ComplexScalar::new(0.0, (n as f64 + 0.5) / (2.0 * p.a()));
    let s = jost_minus(p, k)? / jost_plus(p, k)?;
    Ok((real_part_checked(s)?, ln_large_order_asymptote(n).exp()))
}

/// How the left-hand side of the Heisenberg condition is obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    AnalyticResidue,
    Contour,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HeisenbergReport {
    pub bound_states: Vec<BoundState>,
    /// Left-hand sides, `2 pi i Res_k S(k_l)`, by `method`. Ratios subtract
    /// the merged redundant residue of a coincident pole first.
    pub lhs: Vec<f64>,
    pub ratios: Vec<f64>,
    pub method: Method,
}

/// Left-hand side of the Heisenberg condition by contour integration.
pub fn bound_residue_contour(p: &ModelParams, bs: &BoundState, all: &[BoundState]) -> Result<f64> {
    let kappas: Vec<f64> = all.iter().map(|b| b.kappa).collect();
    let spec = ContourSpec::around(p, bs.k(), &bound_state_poles(&kappas))?;
    real_part_checked(contour_residue(p, &spec)?)
}

pub fn heisenberg_report(p: &ModelParams, method: Method) -> Result<HeisenbergReport> {
    let bound_states = find_bound_states(p)?;
    let lhs = match method {
        Method::AnalyticResidue => bound_states.iter().map(|b| b.residue_lhs).collect(),
        Method::Contour => bound_states
            .iter()
            .map(|b| bound_residue_contour(p, b, &bound_states))
            .collect::<Result<Vec<_>>>()?,
    };
    let ratios = lhs
        .iter()
        .zip(&bound_states)
        .map(|(l, b)| (l - b.redundant_share) / b.c_l_squared)
        .collect();
    Ok(HeisenbergReport {
        bound_states,
        lhs,
        ratios,
        method,
    })
}
