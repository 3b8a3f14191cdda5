use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

// 15-point Kronrod rule with its embedded 7-point Gauss rule.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

const MAX_INTERVALS: usize = 5000;

/// Integral value and the summed embedded error estimate `|K15 - G7|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureEstimate {
    pub value: f64,
    pub error: f64,
}

#[derive(Debug)]
struct Panel {
    lo: f64,
    hi: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn gauss_kronrod<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64) -> Panel {
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let fc = f(center);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for j in 0..7 {
        let dx = half * XGK[j];
        let pair = f(center - dx) + f(center + dx);
        kronrod += WGK[j] * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    Panel {
        lo,
        hi,
        value: kronrod * half,
        error: ((kronrod - gauss) * half).abs(),
    }
}

/// Globally adaptive Gauss-Kronrod (7, 15) integration of `f` over `[lo, hi]`
/// to absolute tolerance `tol`, returning the value and its error estimate.
pub fn adaptive_quadrature_with_estimate<F>(
    f: F,
    lo: f64,
    hi: f64,
    tol: f64,
) -> Result<QuadratureEstimate>
where
    F: Fn(f64) -> f64,
{
    if !(tol > 0.0) || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::InvalidArgument(
            "quadrature needs finite limits and tol > 0".into(),
        ));
    }
    if lo == hi {
        return Ok(QuadratureEstimate {
            value: 0.0,
            error: 0.0,
        });
    }
    let mut heap = BinaryHeap::new();
    let first = gauss_kronrod(&f, lo, hi);
    let mut error = first.error;
    heap.push(first);
    loop {
        if !error.is_finite() {
            return Err(Error::InvalidArgument("integrand is not finite".into()));
        }
        if error <= tol {
            break;
        }
        if heap.len() >= MAX_INTERVALS {
            return Err(Error::MaxDepthExceeded {
                intervals: heap.len(),
                estimate: error,
            });
        }
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.lo + worst.hi);
        let left = gauss_kronrod(&f, worst.lo, mid);
        let right = gauss_kronrod(&f, mid, worst.hi);
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }
    // Re-sum to shed the drift of the running update.
    let (value, error) = heap
        .iter()
        .fold((0.0, 0.0), |(v, e), p| (v + p.value, e + p.error));
    Ok(QuadratureEstimate { value, error })
}

/// [`adaptive_quadrature_with_estimate`] returning the value only.
pub fn adaptive_quadrature<F>(f: F, lo: f64, hi: f64, tol: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    adaptive_quadrature_with_estimate(f, lo, hi, tol).map(|q| q.value)
}
