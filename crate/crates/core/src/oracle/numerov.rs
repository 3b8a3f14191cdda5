use crate::error::{Error, Result};
use crate::scattering::ModelParams;

/// Uniform radial grid `r_i = i * step`, `i = 0..n_points`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NumerovGrid {
    r_max: f64,
    step: f64,
}

impl NumerovGrid {
    pub fn new(r_max: f64, step: f64) -> Result<Self> {
        if !(step > 0.0) || !r_max.is_finite() {
            return Err(Error::InvalidArgument("grid step must be positive".into()));
        }
        if r_max / step < 1e4 {
            return Err(Error::InvalidArgument(
                "grid needs r_max/step >= 1e4".into(),
            ));
        }
        Ok(Self { r_max, step })
    }

    /// `r_max = 40a`, `step = 1e-3 a`.
    pub fn for_params(p: &ModelParams) -> Self {
        Self {
            r_max: 40.0 * p.a(),
            step: 1e-3 * p.a(),
        }
    }

    pub fn r_max(&self) -> f64 {
        self.r_max
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn n_points(&self) -> usize {
        (self.r_max / self.step).round() as usize + 1
    }
}

/// Samples `u(r_i)` on a [`NumerovGrid`].
#[derive(Debug, Clone, PartialEq)]
pub struct RadialSamples {
    pub step: f64,
    pub values: Vec<f64>,
}

impl RadialSamples {
    pub fn r(&self, i: usize) -> f64 {
        i as f64 * self.step
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Value at the grid point nearest to `r`, if `r` lies on the grid.
    pub fn at(&self, r: f64) -> Option<f64> {
        let i = (r / self.step).round();
        if i < 0.0 || (i * self.step - r).abs() > 1e-9 * self.step.max(r) {
            return None;
        }
        self.values.get(i as usize).copied()
    }
}

fn q(p: &ModelParams, k_squared: f64, r: f64) -> f64 {
    k_squared + p.u0() * (-r / p.a()).exp()
}

// Taylor start of the solution with u(0) = 0, u'(0) = 1.
fn first_step(p: &ModelParams, k_squared: f64, h: f64) -> f64 {
    let (u0, a) = (p.u0(), p.a());
    let g0 = k_squared + u0;
    h - g0 * h.powi(3) / 6.0
        + (2.0 * u0 / a) * h.powi(4) / 24.0
        + (g0 * g0 - 3.0 * u0 / (a * a)) * h.powi(5) / 120.0
}

/// Runs the recursion over the grid. `visit(i, u_i, u_{i-1})` may rescale
/// the pair and returns the factor applied.
fn march<F>(p: &ModelParams, k_squared: f64, grid: &NumerovGrid, mut visit: F) -> (f64, f64)
where
    F: FnMut(usize, f64, f64) -> f64,
{
    let h = grid.step;
    let c = h * h / 12.0;
    let n = grid.n_points();
    let mut prev = 0.0;
    let mut cur = first_step(p, k_squared, h);
    let mut w_prev = 1.0 + c * q(p, k_squared, 0.0);
    let mut w_cur = 1.0 + c * q(p, k_squared, h);
    visit(0, prev, 0.0);
    let s = visit(1, cur, prev);
    cur *= s;
    prev *= s;
    for i in 2..n {
        let w_next = 1.0 + c * q(p, k_squared, i as f64 * h);
        let next = ((12.0 - 10.0 * w_cur) * cur - w_prev * prev) / w_next;
        prev = cur;
        cur = next;
        w_prev = w_cur;
        w_cur = w_next;
        let s = visit(i, cur, prev);
        cur *= s;
        prev *= s;
    }
    (cur, prev)
}

/// Integrates `u'' + (k^2 + U0 e^{-r/a}) u = 0` with `u(0) = 0`, `u'(0) = 1`
/// by the Numerov recursion.
pub fn numerov_integrate(p: &ModelParams, k_squared: f64, grid: &NumerovGrid) -> RadialSamples {
    let mut values = Vec::with_capacity(grid.n_points());
    march(p, k_squared, grid, |_, u, _| {
        values.push(u);
        1.0
    });
    RadialSamples {
        step: grid.step,
        values,
    }
}

/// Sign-carrying mismatch `u_N - e^{-kappa h} u_{N-1}` between the integrated
/// solution and the decaying tail at `r_max`; it changes sign at eigenvalues.
pub fn shooting_mismatch(p: &ModelParams, kappa: f64, grid: &NumerovGrid) -> f64 {
    let (last, before) = march(p, -kappa * kappa, grid, |_, u, _| {
        if u.abs() > 1e200 {
            1e-200
        } else {
            1.0
        }
    });
    let m = last - (-kappa * grid.step).exp() * before;
    m / last.abs().max(before.abs()).max(f64::MIN_POSITIVE)
}

fn brackets(p: &ModelParams, kappa_max: f64, dk: f64, grid: &NumerovGrid) -> Vec<(f64, f64)> {
    let start = 1e-6 / p.a();
    let steps = ((kappa_max - start) / dk).ceil() as usize;
    let mut out = Vec::new();
    let mut lo = start;
    let mut m_lo = shooting_mismatch(p, lo, grid);
    for j in 1..=steps {
        let hi = (start + j as f64 * dk).min(kappa_max);
        let m_hi = shooting_mismatch(p, hi, grid);
        if m_lo == 0.0 || m_lo.signum() != m_hi.signum() {
            out.push((lo, hi));
        }
        lo = hi;
        m_lo = m_hi;
    }
    out
}

/// Bound-state momenta `kappa` in `(0, kappa_max]` from the shooting
/// eigencondition, sorted descending.
pub fn shooting_eigenvalues(
    p: &ModelParams,
    kappa_max: f64,
    grid: &NumerovGrid,
) -> Result<Vec<f64>> {
    if kappa_max < p.alpha() / (2.0 * p.a()) {
        return Err(Error::InvalidArgument(
            "kappa_max must cover alpha/(2a)".into(),
        ));
    }
    let dk = 0.01 / p.a();
    let coarse = brackets(p, kappa_max, dk, grid);
    let fine = brackets(p, kappa_max, 0.5 * dk, grid);
    if coarse.len() != fine.len() {
        return Err(Error::GridTooCoarse);
    }
    let mut roots: Vec<f64> = coarse
        .into_iter()
        .map(|(mut lo, mut hi)| {
            let s_lo = shooting_mismatch(p, lo, grid).signum();
            while hi - lo > 1e-11 * hi.max(1.0) {
                let mid = 0.5 * (lo + hi);
                if shooting_mismatch(p, mid, grid).signum() == s_lo {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            0.5 * (lo + hi)
        })
        .collect();
    roots.sort_by(|x, y| y.total_cmp(x));
    Ok(roots)
}

/// Number of interior nodes of the integrated solution at `k^2 = -kappa^2`.
///
/// Only the classically allowed region plus one decay length is inspected;
/// beyond it the growing tail left by a finite-precision eigenvalue
/// dominates and the true eigenfunction has no further nodes.
pub fn eigenfunction_nodes(p: &ModelParams, kappa: f64, grid: &NumerovGrid) -> usize {
    let a = p.a();
    let turning = a * (p.u0() / (kappa * kappa)).ln();
    let r_cut = (turning + a).min(grid.r_max).min(20.0 * a);
    let u = numerov_integrate(p, -kappa * kappa, grid);
    let mut count = 0;
    let mut last_sign = 0.0;
    for (i, &v) in u.values.iter().enumerate().skip(1) {
        if u.r(i) > r_cut {
            break;
        }
        if v != 0.0 {
            let s = v.signum();
            if last_sign != 0.0 && s != last_sign {
                count += 1;
            }
            last_sign = s;
        }
    }
    count
}
