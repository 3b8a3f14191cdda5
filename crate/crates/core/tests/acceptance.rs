//! Acceptance criteria 1-10, one PASS/FAIL line each.
//!
//! Criteria 3 and 9 cannot hold as stated: the redundant residue is
//! `-(pi/a)(alpha/2)^{2n}/(n!(n-1)!)`, so its value at `alpha = 2, n = 1` is
//! `-pi`, and the large-order ratio at `alpha = 3` decays like
//! `alpha^2/(2n)`, leaving `0.059` at `n = 80`. Both are evaluated as
//! written and reported; the target fails if any other criterion fails.

use std::f64::consts::PI;
use std::time::Instant;

use expo_scatter::oracle::{numerov_integrate, shooting_eigenvalues, NumerovGrid};
use expo_scatter::scattering::{irregular_wronskian, regular_solution, s_matrix};
use expo_scatter::specfun::{
    bessel_j_cx_order, bessel_j_with_derivative, bessel_y_with_derivative, gamma_cx,
    nearest_integer, SeriesPolicy,
};
use expo_scatter::spectrum::{
    bound_state_kappas, find_bound_states, heisenberg_report, large_n_limit_check,
    reduced_identity_check, redundant_pole, redundant_pole_sum, redundant_residue_analytic, Method,
};
use expo_scatter::{ComplexScalar, ModelParams};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const KNOWN_UNATTAINABLE: [u32; 2] = [3, 9];

struct Outcome {
    id: u32,
    pass: bool,
    detail: String,
}

fn c(re: f64, im: f64) -> ComplexScalar {
    ComplexScalar::new(re, im)
}

fn params(alpha: f64) -> ModelParams {
    ModelParams::new(1.0, alpha).unwrap()
}

fn heisenberg_ratio() -> Outcome {
    let start = Instant::now();
    let mut worst = 0.0f64;
    let mut count = 0;
    for alpha in [3.0, 5.0, 8.0, 12.0] {
        let report = heisenberg_report(&params(alpha), Method::AnalyticResidue).unwrap();
        for r in &report.ratios {
            worst = worst.max((r - 1.0).abs());
            count += 1;
        }
    }
    let secs = start.elapsed().as_secs_f64();
    Outcome {
        id: 1,
        pass: count > 0 && worst < 1e-9 && secs < 10.0,
        detail: format!("{count} states, max |R_H - 1| = {worst:.2e}, {secs:.2} s"),
    }
}

fn reduced_identity() -> Outcome {
    let mut at_zeros = 0.0f64;
    let mut at_mid = f64::INFINITY;
    for alpha in [3.0, 5.0, 8.0] {
        let p = params(alpha);
        let kappas = bound_state_kappas(&p).unwrap();
        for &kappa in &kappas {
            let rhs = -2.0 * (2.0 * PI * kappa).sin() / (PI * alpha);
            let res = reduced_identity_check(&p, kappa).unwrap().abs();
            at_zeros = at_zeros.max(res / rhs.abs().max(1.0));
        }
        for w in kappas.windows(2) {
            at_mid = at_mid.min(
                reduced_identity_check(&p, 0.5 * (w[0] + w[1]))
                    .unwrap()
                    .abs(),
            );
        }
    }
    Outcome {
        id: 2,
        pass: at_zeros < 1e-10 && at_mid > 1e-3,
        detail: format!(
            "max scaled residual at zeros {at_zeros:.2e}, min at midpoints {at_mid:.2e}"
        ),
    }
}

fn redundant_residues() -> Outcome {
    let p = params(1.0);
    let worst = (1..=5)
        .map(|n| redundant_pole(&p, n).unwrap().discrepancy())
        .fold(0.0, f64::max);
    let at_two = redundant_residue_analytic(&params(2.0), 1).unwrap();
    let exact_pi = (at_two - PI).abs() < 1e-14;
    Outcome {
        id: 3,
        pass: worst < 1e-8 && exact_pi,
        detail: format!(
            "contour vs closed form max rel {worst:.2e}; analytic(alpha=2, n=1) = {at_two:.15} vs pi"
        ),
    }
}

fn redundant_sum() -> Outcome {
    // alpha = 2, a = 1: q = exp(-(r + r')/4).
    let p = params(2.0);
    let worst = [0.1f64, 0.5, 1.0]
        .iter()
        .map(|&q| {
            let (partial, closed) =
                redundant_pole_sum(&p, (-4.0 * q.ln()).max(1e-300), 50).unwrap();
            (partial - closed).abs() / closed
        })
        .fold(0.0, f64::max);
    Outcome {
        id: 4,
        pass: worst < 1e-12,
        detail: format!("closed form (pi/a) q I1(2q), max rel {worst:.2e}"),
    }
}

fn unitarity_and_symmetry() -> Outcome {
    let p = params(3.0);
    let unit = (0..1000)
        .map(|i| 0.01 + (20.0 - 0.01) * i as f64 / 999.0)
        .map(|k| (s_matrix(&p, c(k, 0.0)).unwrap().norm() - 1.0).abs())
        .fold(0.0, f64::max);
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut sym = 0.0f64;
    let mut taken = 0;
    while taken < 100 {
        let k = c(rng.gen_range(-3.0..3.0), rng.gen_range(-1.5..1.5));
        if nearest_integer(p.order(k)).1 <= 0.1 || k.norm() < 1e-3 {
            continue;
        }
        let s = s_matrix(&p, k).unwrap();
        sym = sym.max((s_matrix(&p, k.conj()).unwrap().conj() * s - 1.0).norm());
        taken += 1;
    }
    Outcome {
        id: 5,
        pass: unit < 1e-12 && sym < 1e-10,
        detail: format!("max ||S| - 1| = {unit:.2e}, max |S*(k*) S(k) - 1| = {sym:.2e}"),
    }
}

fn oracle_equivalence() -> Outcome {
    let p = params(3.0);
    let grid = NumerovGrid::new(10.0, 1e-3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut numerov = 0.0f64;
    for _ in 0..10 {
        let k: f64 = rng.gen_range(0.05..3.0);
        let u = numerov_integrate(&p, k * k, &grid);
        let (mut peak, mut dev) = (0.0f64, 0.0f64);
        for i in (500..u.len()).step_by(10) {
            let phi = regular_solution(&p, c(k, 0.0), u.r(i)).unwrap().re;
            peak = peak.max(phi.abs());
            dev = dev.max((u.values[i] - phi).abs());
        }
        numerov = numerov.max(dev / peak);
    }
    let mut shooting = 0.0f64;
    let mut counts_match = true;
    for alpha in [3.0, 5.0, 8.0] {
        let q = params(alpha);
        let shot =
            shooting_eigenvalues(&q, alpha / 2.0 + 0.5, &NumerovGrid::for_params(&q)).unwrap();
        let found = bound_state_kappas(&q).unwrap();
        counts_match &= shot.len() == found.len();
        for (a, b) in shot.iter().zip(&found) {
            shooting = shooting.max((a - b).abs());
        }
    }
    Outcome {
        id: 6,
        pass: numerov < 1e-6 && counts_match && shooting < 1e-6,
        detail: format!("Numerov max rel {numerov:.2e}; shooting max |dkappa| {shooting:.2e}"),
    }
}

fn wronskian_identity() -> Outcome {
    let p = params(3.0);
    let mut worst = 0.0f64;
    for k in [c(0.7, 0.0), c(0.4, 0.3), c(-1.1, 0.2)] {
        worst = worst.max((irregular_wronskian(&p, k, 1.3).unwrap() + c(0.0, 2.0) * k).norm());
    }
    for n in 1..=3 {
        for j in 3..=6 {
            let k = c(0.0, -(n as f64 - 10f64.powi(-j)) / 2.0);
            worst = worst.max((irregular_wronskian(&p, k, 0.8).unwrap() + c(0.0, 2.0) * k).norm());
        }
    }
    Outcome {
        id: 7,
        pass: worst < 1e-8,
        detail: format!("max |W + 2ik| = {worst:.2e}"),
    }
}

fn bound_state_count() -> Outcome {
    let mut ok = true;
    let mut max_count = 0;
    for i in 0..291 {
        let alpha = 0.5 + 14.5 * i as f64 / 290.0;
        let n = find_bound_states(&params(alpha)).unwrap().len();
        ok &= n <= (alpha * alpha / 4.0).floor() as usize && (alpha >= 2.0 || n == 0);
        max_count = max_count.max(n);
    }
    Outcome {
        id: 8,
        pass: ok,
        detail: format!("291 alpha values in [0.5, 15], at most {max_count} states"),
    }
}

fn large_order_limit() -> Outcome {
    let p = params(3.0);
    let devs: Vec<f64> = [10, 20, 40, 80]
        .iter()
        .map(|&n| {
            let (s, asym) = large_n_limit_check(&p, n).unwrap();
            (s / asym - 1.0).abs()
        })
        .collect();
    let monotone = devs.windows(2).all(|w| w[1] < w[0]);
    Outcome {
        id: 9,
        pass: monotone && devs[3] < 0.02,
        detail: format!(
            "|S/asymptote - 1| at n = 10, 20, 40, 80: {:.4}, {:.4}, {:.4}, {:.4}",
            devs[0], devs[1], devs[2], devs[3]
        ),
    }
}

fn special_function_kernel(started: Instant) -> Outcome {
    let policy = SeriesPolicy::default();
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut reflection = 0.0f64;
    let mut taken = 0;
    while taken < 100 {
        let w = c(rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0));
        let (n, d) = nearest_integer(w);
        if w.norm() >= 5.0 || w.norm() < 1e-3 || (n != 0 && d <= 0.1) {
            continue;
        }
        let v = gamma_cx(1.0 + w).unwrap() * gamma_cx(1.0 - w).unwrap() * (PI * w).sin() / (PI * w);
        reflection = reflection.max((v - 1.0).norm());
        taken += 1;
    }
    let mut integer = 0.0f64;
    for n in 1..=8 {
        for x in [0.5, 1.0, 3.0, 7.0] {
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            let jm = bessel_j_cx_order(c(-(n as f64), 0.0), x, &policy).unwrap();
            let jp = bessel_j_cx_order(c(n as f64, 0.0), x, &policy).unwrap();
            integer = integer.max((jm - sign * jp).norm());
        }
    }
    let mut wronskian = 0.0f64;
    for _ in 0..100 {
        let nu = if rng.gen_bool(0.5) {
            c(rng.gen_range(-3.0..3.0), rng.gen_range(-1.5..1.5))
        } else {
            c(
                rng.gen_range(-4..=4) as f64 + rng.gen_range(-1e-5..1e-5),
                0.0,
            )
        };
        let x = rng.gen_range(0.5..10.0);
        let (j, dj) = bessel_j_with_derivative(nu, x, &policy).unwrap();
        let (y, dy) = bessel_y_with_derivative(nu, x, &policy).unwrap();
        let expected = 2.0 / (PI * x);
        wronskian = wronskian.max((j * dy - dj * y - expected).norm() / expected);
    }
    let secs = started.elapsed().as_secs_f64();
    Outcome {
        id: 10,
        pass: reflection < 1e-12 && integer < 1e-12 && wronskian < 1e-9 && secs < 60.0,
        detail: format!(
            "reflection {reflection:.2e}, integer identity {integer:.2e}, Wronskian {wronskian:.2e}; suite {secs:.1} s"
        ),
    }
}

fn main() {
    let started = Instant::now();
    let outcomes = vec![
        heisenberg_ratio(),
        reduced_identity(),
        redundant_residues(),
        redundant_sum(),
        unitarity_and_symmetry(),
        oracle_equivalence(),
        wronskian_identity(),
        bound_state_count(),
        large_order_limit(),
        special_function_kernel(started),
    ];
    for o in &outcomes {
        let tag = if o.pass { "PASS" } else { "FAIL" };
        println!("criterion {:>2}: {tag}  {}", o.id, o.detail);
    }
    let unexpected: Vec<u32> = outcomes
        .iter()
        .filter(|o| !o.pass && !KNOWN_UNATTAINABLE.contains(&o.id))
        .map(|o| o.id)
        .collect();
    if !unexpected.is_empty() {
        eprintln!("unexpected failures: {unexpected:?}");
        std::process::exit(1);
    }
    println!(
        "acceptance: {} of 10 pass, known unattainable {KNOWN_UNATTAINABLE:?}",
        outcomes.iter().filter(|o| o.pass).count()
    );
}
