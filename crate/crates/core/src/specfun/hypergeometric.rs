use super::{ComplexScalar, SeriesPolicy, Truncation};
use crate::error::{Error, Result};

/// Confluent hypergeometric limit function
/// `0F1(; b; z) = sum_m z^m / ((b)_m m!)` with the default series policy.
pub fn hyp0f1(b: ComplexScalar, z: ComplexScalar) -> Result<ComplexScalar> {
    hyp0f1_with_policy(b, z, &SeriesPolicy::default())
}

pub fn hyp0f1_with_policy(
    b: ComplexScalar,
    z: ComplexScalar,
    policy: &SeriesPolicy,
) -> Result<ComplexScalar> {
    let n = b.re.round();
    if n <= 0.0 && (b - n).norm() < 1e-13 {
        return Err(Error::PoleAtNonPositiveInteger(b));
    }
    let mut term = ComplexScalar::new(1.0, 0.0);
    let mut sum = term;
    let mut trunc = Truncation::new(policy);
    for m in 0..policy.max_terms {
        let mf = m as f64;
        term = term * z / ((b + mf) * (mf + 1.0));
        sum += term;
        let decaying = (mf + 2.0) * (b + mf + 1.0).norm() > z.norm();
        if decaying && trunc.done(term.norm(), sum.norm()) {
            return Ok(sum);
        }
    }
    Err(Error::SeriesNotConverged {
        max_terms: policy.max_terms,
    })
}
