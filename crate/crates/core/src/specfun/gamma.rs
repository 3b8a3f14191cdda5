use std::f64::consts::PI;

use super::ComplexScalar;
use crate::error::{Error, Result};

/// Euler-Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

const POLE_TOL: f64 = 1e-13;

/// `sin(pi z)` with the real part reduced to `[-1/2, 1/2]` first, so that the
/// result keeps full relative accuracy next to the integers.
pub fn sin_pi(z: ComplexScalar) -> ComplexScalar {
    let n = z.re.round();
    let r = z.re - n;
    let sign = if (n as i64) % 2 == 0 { 1.0 } else { -1.0 };
    let (s, c) = (PI * r).sin_cos();
    let y = PI * z.im;
    ComplexScalar::new(s * y.cosh(), c * y.sinh()) * sign
}

/// `cos(pi z)`, reduced like [`sin_pi`].
pub fn cos_pi(z: ComplexScalar) -> ComplexScalar {
    let n = z.re.round();
    let r = z.re - n;
    let sign = if (n as i64) % 2 == 0 { 1.0 } else { -1.0 };
    let (s, c) = (PI * r).sin_cos();
    let y = PI * z.im;
    ComplexScalar::new(c * y.cosh(), -s * y.sinh()) * sign
}

fn pole_index(z: ComplexScalar) -> Option<i64> {
    let n = z.re.round();
    if n <= 0.0 && (z - n).norm() < POLE_TOL {
        Some(n as i64)
    } else {
        None
    }
}

/// Lanczos approximation, valid for `Re z >= 1/2`.
fn gamma_lanczos(z: ComplexScalar) -> ComplexScalar {
    let zm1 = z - 1.0;
    let mut acc = ComplexScalar::new(LANCZOS_COEFFS[0], 0.0);
    for (i, &c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        acc += c / (zm1 + i as f64);
    }
    let t = zm1 + LANCZOS_G + 0.5;
    let log_pow = (zm1 + 0.5) * t.ln() - t;
    (2.0 * PI).sqrt() * log_pow.exp() * acc
}

/// Complex Gamma function.
///
/// Lanczos approximation in the right half-plane, reflection formula
/// `Gamma(z) Gamma(1-z) = pi / sin(pi z)` to the left of `Re z = 1/2`.
pub fn gamma_cx(z: ComplexScalar) -> Result<ComplexScalar> {
    if pole_index(z).is_some() {
        return Err(Error::PoleAtNonPositiveInteger(z));
    }
    if z.re >= 0.5 {
        Ok(gamma_lanczos(z))
    } else {
        Ok(PI / (sin_pi(z) * gamma_lanczos(1.0 - z)))
    }
}

/// Reciprocal Gamma function. Entire; exactly zero at the poles of Gamma.
pub fn rgamma_cx(z: ComplexScalar) -> ComplexScalar {
    if z.re >= 0.5 {
        gamma_lanczos(z).inv()
    } else {
        sin_pi(z) * gamma_lanczos(1.0 - z) / PI
    }
}

/// Residue of `w -> Gamma(1 - w)` at its simple pole `w = n`, `n >= 1`:
/// `(-1)^n / (n-1)!`.
pub fn gamma_residue_at(n: u32) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidArgument("pole index must be >= 1".into()));
    }
    let mut fact = 1.0;
    for j in 1..n {
        fact *= j as f64;
    }
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    Ok(sign / fact)
}

/// Digamma function `psi(z) = Gamma'(z) / Gamma(z)`.
pub fn digamma_cx(z: ComplexScalar) -> Result<ComplexScalar> {
    if pole_index(z).is_some() {
        return Err(Error::PoleAtNonPositiveInteger(z));
    }
    if z.re < 0.5 {
        // psi(z) = psi(1 - z) - pi cot(pi z)
        let reflected = digamma_right(1.0 - z);
        return Ok(reflected - PI * cos_pi(z) / sin_pi(z));
    }
    Ok(digamma_right(z))
}

fn digamma_right(mut z: ComplexScalar) -> ComplexScalar {
    let mut shift = ComplexScalar::new(0.0, 0.0);
    while z.norm() < 12.0 {
        shift -= z.inv();
        z += 1.0;
    }
    // Asymptotic expansion with Bernoulli numbers B_2 .. B_14.
    const COEFFS: [f64; 7] = [
        1.0 / 12.0,
        -1.0 / 120.0,
        1.0 / 252.0,
        -1.0 / 240.0,
        1.0 / 132.0,
        -691.0 / 32760.0,
        1.0 / 12.0,
    ];
    let inv2 = (z * z).inv();
    let mut pow = inv2;
    let mut tail = ComplexScalar::new(0.0, 0.0);
    for c in COEFFS {
        tail += c * pow;
        pow *= inv2;
    }
    shift + z.ln() - 0.5 / z - tail
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn c(re: f64, im: f64) -> ComplexScalar {
        ComplexScalar::new(re, im)
    }

    #[test]
    fn gamma_at_one_and_half() {
        let g1 = gamma_cx(c(1.0, 0.0)).unwrap();
        assert_relative_eq!(g1.re, 1.0, max_relative = 1e-14);
        assert!(g1.im.abs() < 1e-15);
        let gh = gamma_cx(c(0.5, 0.0)).unwrap();
        assert_relative_eq!(gh.re, 1.772_453_850_905_516, max_relative = 1e-14);
    }

    #[test]
    fn gamma_factorials() {
        let mut fact = 1.0;
        for n in 1..30 {
            let g = gamma_cx(c(n as f64, 0.0)).unwrap();
            assert_relative_eq!(g.re, fact, max_relative = 1e-13);
            fact *= n as f64;
        }
    }

    #[test]
    fn gamma_poles_rejected() {
        for n in 0..5 {
            let z = c(-(n as f64), 0.0);
            assert_eq!(gamma_cx(z), Err(Error::PoleAtNonPositiveInteger(z)));
        }
        assert!(gamma_cx(c(-3.0 + 1e-10, 0.0)).is_ok());
        assert_eq!(rgamma_cx(c(-4.0, 0.0)), c(0.0, 0.0));
    }

    #[test]
    fn gamma_left_half_plane() {
        // Gamma(-1/2) = -2 sqrt(pi)
        let g = gamma_cx(c(-0.5, 0.0)).unwrap();
        assert_relative_eq!(g.re, -2.0 * PI.sqrt(), max_relative = 1e-14);
    }

    #[test]
    fn residue_values() {
        assert_eq!(gamma_residue_at(1).unwrap(), -1.0);
        assert_eq!(gamma_residue_at(2).unwrap(), 1.0);
        assert_relative_eq!(gamma_residue_at(4).unwrap(), 1.0 / 6.0);
        assert!(gamma_residue_at(0).is_err());
    }

    #[test]
    fn residue_matches_numerical_limit() {
        // (w - n) Gamma(1 - w) as w -> n, approached from both sides.
        for n in 1..=6u32 {
            let expected = gamma_residue_at(n).unwrap();
            for eps in [1e-6, -1e-6, 1e-7] {
                let w = c(n as f64 + eps, 0.0);
                let limit = (w - n as f64) * gamma_cx(1.0 - w).unwrap();
                assert_relative_eq!(limit.re, expected, max_relative = 1e-5);
            }
        }
    }

    #[test]
    fn digamma_classical_values() {
        let p1 = digamma_cx(c(1.0, 0.0)).unwrap();
        assert_relative_eq!(p1.re, -EULER_GAMMA, max_relative = 1e-13);
        let p2 = digamma_cx(c(2.0, 0.0)).unwrap();
        assert_relative_eq!(p2.re, 1.0 - EULER_GAMMA, max_relative = 1e-13);
        // psi(1/2) = -gamma - 2 ln 2
        let ph = digamma_cx(c(0.5, 0.0)).unwrap();
        assert_relative_eq!(ph.re, -EULER_GAMMA - 2.0 * 2f64.ln(), max_relative = 1e-13);
        // psi(-1/2) = psi(1/2) + 2
        let pm = digamma_cx(c(-0.5, 0.0)).unwrap();
        assert_relative_eq!(pm.re, ph.re + 2.0, max_relative = 1e-13);
    }

    #[test]
    fn digamma_matches_log_gamma_difference() {
        // Central difference of ln Gamma along the real direction.
        for z in [c(0.5, 1.0), c(3.2, -2.5), c(-1.3, 0.7), c(12.0, 20.0)] {
            let h = 1e-6;
            let up = gamma_cx(z + h).unwrap().ln();
            let dn = gamma_cx(z - h).unwrap().ln();
            let fd = (up - dn) / (2.0 * h);
            let psi = digamma_cx(z).unwrap();
            assert!((fd - psi).norm() < 1e-8 * psi.norm().max(1.0), "z = {z}");
        }
    }

    #[test]
    fn sin_pi_is_accurate_near_integers() {
        let z = c(3.0 + 1e-9, 0.0);
        assert_relative_eq!(sin_pi(z).re, -PI * 1e-9, max_relative = 1e-6);
        let w = c(-2.0, 0.0);
        assert_eq!(sin_pi(w).re, 0.0);
        assert_relative_eq!(cos_pi(w).re, 1.0);
    }
}
