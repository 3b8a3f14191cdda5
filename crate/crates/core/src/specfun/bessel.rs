use super::gamma::{cos_pi, digamma_cx, rgamma_cx, sin_pi};
use super::{nearest_integer, ComplexScalar, SeriesPolicy, Truncation};
use crate::error::{Error, Result};

/// Orders closer than this to an integer take the limiting-value path for Y.
const Y_LIMIT_RADIUS: f64 = 1e-3;
/// Largest Richardson offset for the limiting value. The smallest,
/// `delta / 4`, stays clear of `Y_LIMIT_RADIUS`.
const Y_RICHARDSON_DELTA: f64 = 1e-2;

fn check_argument(x: f64) -> Result<()> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "Bessel argument must be positive and finite, got {x}"
        )));
    }
    Ok(())
}

/// Ascending series for `J_nu(x)` and `x J'_nu(x)`.
fn j_series(
    nu: ComplexScalar,
    x: f64,
    policy: &SeriesPolicy,
) -> Result<(ComplexScalar, ComplexScalar)> {
    check_argument(x)?;
    let half = 0.5 * x;
    let ln_half = half.ln();
    let q = -half * half;

    // Below m0 the ratio recurrence may divide by nu + m = 0, so those terms
    // are built from the reciprocal Gamma function directly.
    let m0 = if nu.re < 0.0 {
        (-nu.re).ceil() as usize
    } else {
        0
    };

    let zero = ComplexScalar::new(0.0, 0.0);
    let (mut sum, mut xdsum, mut term) = (zero, zero, zero);
    let mut ln_fact = 0.0;
    let mut trunc = Truncation::new(policy);

    for m in 0..policy.max_terms {
        let mf = m as f64;
        if m > 0 {
            ln_fact += mf.ln();
        }
        term = if m <= m0 {
            let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
            sign * ((nu + 2.0 * mf) * ln_half - ln_fact).exp() * rgamma_cx(nu + mf + 1.0)
        } else {
            term * q / (mf * (nu + mf))
        };
        sum += term;
        xdsum += term * (nu + 2.0 * mf);

        let decaying = (mf + 1.0) * (nu + mf + 1.0).norm() > q.abs();
        if m >= m0 && decaying && trunc.done(term.norm(), sum.norm()) {
            return Ok((sum, xdsum));
        }
    }
    Err(Error::SeriesNotConverged {
        max_terms: policy.max_terms,
    })
}

/// Bessel function of the first kind `J_nu(x)` for complex order and real
/// `x > 0`, from the ascending series
/// `sum_m (-1)^m (x/2)^(nu+2m) / (m! Gamma(nu+m+1))`.
pub fn bessel_j_cx_order(
    nu: ComplexScalar,
    x: f64,
    policy: &SeriesPolicy,
) -> Result<ComplexScalar> {
    j_series(nu, x, policy).map(|(j, _)| j)
}

/// `(J_nu(x), dJ_nu/dx)` from one pass of the series.
pub fn bessel_j_with_derivative(
    nu: ComplexScalar,
    x: f64,
    policy: &SeriesPolicy,
) -> Result<(ComplexScalar, ComplexScalar)> {
    j_series(nu, x, policy).map(|(j, xdj)| (j, xdj / x))
}

fn y_connection(
    nu: ComplexScalar,
    x: f64,
    policy: &SeriesPolicy,
) -> Result<(ComplexScalar, ComplexScalar)> {
    let (jp, djp) = bessel_j_with_derivative(nu, x, policy)?;
    let (jm, djm) = bessel_j_with_derivative(-nu, x, policy)?;
    let (c, s) = (cos_pi(nu), sin_pi(nu));
    Ok(((jp * c - jm) / s, (djp * c - djm) / s))
}

/// Limit of `f` at `center` from symmetric averages at offsets `delta`,
/// `delta/2` and `delta/4`, eliminating the `delta^2` and `delta^4` terms.
pub(crate) fn richardson_limit<F>(center: ComplexScalar, delta: f64, f: F) -> Result<ComplexScalar>
where
    F: Fn(ComplexScalar) -> Result<ComplexScalar>,
{
    let avg = |d: f64| -> Result<ComplexScalar> { Ok(0.5 * (f(center + d)? + f(center - d)?)) };
    let (a1, a2, a4) = (avg(delta)?, avg(0.5 * delta)?, avg(0.25 * delta)?);
    let r1 = (4.0 * a2 - a1) / 3.0;
    let r2 = (4.0 * a4 - a2) / 3.0;
    Ok((16.0 * r2 - r1) / 15.0)
}

/// `(Y_nu(x), dY_nu/dx)`; see [`bessel_y_cx_order`].
pub fn bessel_y_with_derivative(
    nu: ComplexScalar,
    x: f64,
    policy: &SeriesPolicy,
) -> Result<(ComplexScalar, ComplexScalar)> {
    let (_, dist) = nearest_integer(nu);
    if dist >= Y_LIMIT_RADIUS {
        return y_connection(nu, x, policy);
    }
    let y = richardson_limit(nu, Y_RICHARDSON_DELTA, |v| {
        y_connection(v, x, policy).map(|p| p.0)
    })?;
    let dy = richardson_limit(nu, Y_RICHARDSON_DELTA, |v| {
        y_connection(v, x, policy).map(|p| p.1)
    })?;
    Ok((y, dy))
}

/// Bessel function of the second kind,
/// `Y_nu(x) = [J_nu(x) cos(nu pi) - J_{-nu}(x)] / sin(nu pi)`.
///
/// Within `1e-3` of an integer order the connection formula is replaced by
/// its limiting value, extrapolated from the symmetric offsets
/// `nu +- 1e-2`, `nu +- 5e-3` and `nu +- 2.5e-3`.
pub fn bessel_y_cx_order(
    nu: ComplexScalar,
    x: f64,
    policy: &SeriesPolicy,
) -> Result<ComplexScalar> {
    bessel_y_with_derivative(nu, x, policy).map(|(y, _)| y)
}

/// Derivative of `J_nu(x)` with respect to the real order `nu`.
///
/// Term-wise differentiation of the ascending series; the factor
/// `1/Gamma(nu+m+1)` contributes `-psi(z)/Gamma(z)` away from the poles and
/// `(-1)^j j!` at `z = -j`.
pub fn bessel_j_order_derivative(nu: f64, x: f64) -> Result<f64> {
    if x < 1e-8 {
        return Err(Error::DomainTooSmall(x));
    }
    check_argument(x)?;
    let policy = SeriesPolicy::default();
    let half = 0.5 * x;
    let ln_half = half.ln();
    let q = half * half;

    let mut sum = 0.0;
    let mut ln_fact = 0.0;
    let mut trunc = Truncation::new(&policy);
    for m in 0..policy.max_terms {
        let mf = m as f64;
        if m > 0 {
            ln_fact += mf.ln();
        }
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        let power = sign * ((nu + 2.0 * mf) * ln_half - ln_fact).exp();
        let z = nu + mf + 1.0;
        let zr = z.round();
        let factor = if zr <= 0.0 && (z - zr).abs() < 1e-13 {
            let j = -zr as u32;
            let mut jf = 1.0;
            for i in 1..=j {
                jf *= i as f64;
            }
            if j % 2 == 0 {
                jf
            } else {
                -jf
            }
        } else {
            let zc = ComplexScalar::new(z, 0.0);
            let rg = rgamma_cx(zc).re;
            rg * (ln_half - digamma_cx(zc)?.re)
        };
        let term = power * factor;
        sum += term;
        let decaying = (mf + 1.0) * (z.abs()) > q;
        if z > 0.0 && decaying && trunc.done(term.abs(), sum.abs()) {
            return Ok(sum);
        }
    }
    Err(Error::SeriesNotConverged {
        max_terms: policy.max_terms,
    })
}

/// Above this argument the real-order `J` switches from the ascending series,
/// whose cancellation costs about `exp(x)` in absolute accuracy, to Miller's
/// backward recurrence.
const MILLER_THRESHOLD: f64 = 8.0;

/// `J_nu(x)` for real `nu >= 0` and `x > 0`, accurate to a few ulps of
/// `max |J|` for every `x`.
pub fn bessel_j_real_order(nu: f64, x: f64) -> Result<f64> {
    check_argument(x)?;
    if !(nu >= 0.0) || !nu.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "real-order J needs nu >= 0, got {nu}"
        )));
    }
    if x <= MILLER_THRESHOLD {
        return bessel_j_cx_order(ComplexScalar::new(nu, 0.0), x, &SeriesPolicy::default())
            .map(|j| j.re);
    }
    Ok(miller(nu, x))
}

/// Backward recurrence over the orders `nu0 + j`, `nu0 = frac(nu)`,
/// normalised by `(x/2)^nu0 = sum_k c_k J_{nu0+2k}(x)` with
/// `c_0 = Gamma(1 + nu0)` and `c_k = (nu0 + 2k) Gamma(nu0 + k) / k!`.
fn miller(nu: f64, x: f64) -> f64 {
    let nu0 = nu - nu.floor();
    let target = nu.floor() as usize;
    let top = (nu.max(x) + 30.0 + 3.0 * x.sqrt()).ceil() as usize;
    let top = top + top % 2;
    let mut values = vec![0.0; top + 2];
    values[top] = 1e-300;
    for j in (1..=top).rev() {
        let order = nu0 + j as f64;
        values[j - 1] = 2.0 * order / x * values[j] - values[j + 1];
        if values[j - 1].abs() > 1e250 {
            values[j - 1..].iter_mut().for_each(|v| *v *= 1e-250);
        }
    }
    let gamma1 = super::gamma::gamma_cx(ComplexScalar::new(1.0 + nu0, 0.0))
        .expect("1 + nu0 lies in [1, 2)")
        .re;
    let mut norm = gamma1 * values[0];
    // g_k = Gamma(nu0 + k) / k!, starting from g_1 = Gamma(1 + nu0).
    let mut g = gamma1;
    for k in 1..=top / 2 {
        if k > 1 {
            g *= (nu0 + k as f64 - 1.0) / k as f64;
        }
        norm += (nu0 + 2.0 * k as f64) * g * values[2 * k];
    }
    values[target] * (0.5 * x).powf(nu0) / norm
}

/// Modified Bessel function `I_1(x) = sum_m (x/2)^(2m+1) / (m! (m+1)!)`.
pub fn bessel_i1(x: f64) -> Result<f64> {
    if !(x >= 0.0) {
        return Err(Error::InvalidArgument(format!("I1 needs x >= 0, got {x}")));
    }
    if x > 700.0 {
        return Err(Error::Overflow(x));
    }
    let half = 0.5 * x;
    let q = half * half;
    let mut term = half;
    let mut sum = term;
    let mut m = 0.0;
    while term > 1e-17 * sum || (m + 1.0) * (m + 2.0) < q {
        term *= q / ((m + 1.0) * (m + 2.0));
        sum += term;
        m += 1.0;
        if term == 0.0 {
            break;
        }
    }
    Ok(sum)
}
