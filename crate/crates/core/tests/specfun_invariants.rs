use std::f64::consts::PI;

use expo_scatter::oracle::adaptive_quadrature;
use expo_scatter::specfun::{
    bessel_j_cx_order, bessel_j_with_derivative, bessel_y_with_derivative, gamma_cx, hyp0f1,
    nearest_integer, SeriesPolicy,
};
use expo_scatter::ComplexScalar;
use proptest::prelude::*;

fn c(re: f64, im: f64) -> ComplexScalar {
    ComplexScalar::new(re, im)
}

fn j(nu: ComplexScalar, x: f64) -> ComplexScalar {
    bessel_j_cx_order(nu, x, &SeriesPolicy::default()).unwrap()
}

fn config() -> ProptestConfig {
    ProptestConfig::with_cases(100)
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn gamma_reflection(re in -5.0f64..5.0, im in -5.0f64..5.0) {
        let w = c(re, im);
        prop_assume!(w.norm() < 5.0 && w.norm() > 1e-3);
        let (n, dist) = nearest_integer(w);
        prop_assume!(n == 0 || dist > 0.1);
        let lhs = gamma_cx(1.0 + w).unwrap() * gamma_cx(1.0 - w).unwrap() * (PI * w).sin() / (PI * w);
        prop_assert!((lhs - 1.0).norm() < 1e-12, "w = {w}: {lhs}");
    }

    #[test]
    fn bessel_ode_residual(re in -5.0f64..5.0, im in -5.0f64..5.0, x in 0.5f64..10.0) {
        let nu = c(re, im);
        prop_assume!(nu.norm() <= 5.0);
        // Five-point stencils: at h = 1e-4 the three-point second difference
        // is dominated by the series roundoff once x approaches 10.
        // The step shrinks with x, where the phase (x/2)^nu varies fastest.
        let h = (2e-3 * x).min(1e-2);
        let v: Vec<_> = (-2..=2).map(|i| j(nu, x + i as f64 * h)).collect();
        let j0 = v[2];
        let d1 = (v[0] - 8.0 * v[1] + 8.0 * v[3] - v[4]) / (12.0 * h);
        let d2 = (-v[0] + 16.0 * v[1] - 30.0 * v[2] + 16.0 * v[3] - v[4]) / (12.0 * h * h);
        let terms = [x * x * d2, x * d1, (x * x - nu * nu) * j0];
        let residual = terms[0] + terms[1] + terms[2];
        let scale = terms.iter().map(|t| t.norm()).fold(0.0, f64::max);
        prop_assert!(residual.norm() < 1e-6 * scale, "nu = {nu}, x = {x}: {residual}");
    }

    #[test]
    fn wronskian_of_j_and_y(re in -3.0f64..3.0, im in -1.5f64..1.5, x in 0.5f64..10.0) {
        let nu = c(re, im);
        let policy = SeriesPolicy::default();
        let (jv, dj) = bessel_j_with_derivative(nu, x, &policy).unwrap();
        let (yv, dy) = bessel_y_with_derivative(nu, x, &policy).unwrap();
        let w = jv * dy - dj * yv;
        let expected = 2.0 / (PI * x);
        prop_assert!((w - expected).norm() < 1e-9 * expected, "nu = {nu}, x = {x}: {w}");
    }

    #[test]
    fn wronskian_near_integer_orders(n in -4i32..=4, offset in -1e-5f64..1e-5, x in 0.5f64..10.0) {
        let nu = c(n as f64 + offset, 0.0);
        let policy = SeriesPolicy::default();
        let (jv, dj) = bessel_j_with_derivative(nu, x, &policy).unwrap();
        let (yv, dy) = bessel_y_with_derivative(nu, x, &policy).unwrap();
        let w = jv * dy - dj * yv;
        let expected = 2.0 / (PI * x);
        prop_assert!((w - expected).norm() < 1e-9 * expected, "nu = {nu}, x = {x}: {w}");
    }

    #[test]
    fn conjugate_order(re in -5.0f64..5.0, im in -5.0f64..5.0, x in 0.1f64..12.0) {
        let nu = c(re, im);
        let a = j(nu.conj(), x);
        let b = j(nu, x).conj();
        prop_assert!((a - b).norm() <= 1e-14 * b.norm().max(1e-300));
    }

    #[test]
    fn jost_form_of_0f1(im in -3.0f64..3.0, alpha in 0.5f64..6.0) {
        let nu = c(0.0, im);
        let f = hyp0f1(1.0 - nu, c(-alpha * alpha / 4.0, 0.0)).unwrap();
        let g = gamma_cx(1.0 - nu).unwrap() * (nu * (alpha / 2.0).ln()).exp() * j(-nu, alpha);
        prop_assert!((f - g).norm() < 1e-12 * f.norm());
    }
}

#[test]
fn integer_order_identity() {
    for n in 1..=8 {
        for x in [0.5, 1.0, 3.0, 7.0] {
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            let d = j(c(-(n as f64), 0.0), x) - sign * j(c(n as f64, 0.0), x);
            assert!(d.norm() < 1e-12, "n = {n}, x = {x}: {d}");
        }
    }
}

#[test]
fn gamma_against_euler_integral() {
    // Gamma(z) = int_0^inf t^{z-1} e^{-t} dt truncated at t = 50, with t = e^s.
    let z = c(1.0, 2.0);
    let integrand = |s: f64| (z * s - s.exp()).exp();
    let (lo, hi) = (-40.0, 50f64.ln());
    let re = adaptive_quadrature(|s| integrand(s).re, lo, hi, 1e-13).unwrap();
    let im = adaptive_quadrature(|s| integrand(s).im, lo, hi, 1e-13).unwrap();
    let g = gamma_cx(z).unwrap();
    assert!((c(re, im) - g).norm() < 1e-9 * g.norm(), "{re} {im} vs {g}");
}

#[test]
fn gamma_against_euler_integral_real_axis() {
    for x in [0.5, 1.5, 3.7, 7.0] {
        let v = adaptive_quadrature(|s: f64| (x * s - s.exp()).exp(), -60.0, 70f64.ln(), 1e-13)
            .unwrap();
        let g = gamma_cx(c(x, 0.0)).unwrap().re;
        assert!((v - g).abs() < 1e-11 * g, "x = {x}");
    }
}
