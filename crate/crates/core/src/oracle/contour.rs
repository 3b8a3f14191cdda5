use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::scattering::{s_matrix, ModelParams};
use crate::specfun::ComplexScalar;

pub const DEFAULT_CONTOUR_NODES: usize = 256;

/// Magnitude of `S` above which a node counts as sitting on a pole.
const NODE_BLOWUP: f64 = 1e12;

/// Circle `|k - center| = radius` sampled at `n_nodes` equispaced points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContourSpec {
    center: ComplexScalar,
    radius: f64,
    n_nodes: usize,
}

impl ContourSpec {
    /// Requires `1e-4/a < radius < 1/(4a)` and at least 8 nodes.
    pub fn new(
        p: &ModelParams,
        center: ComplexScalar,
        radius: f64,
        n_nodes: usize,
    ) -> Result<Self> {
        let a = p.a();
        if !(radius < 0.25 / a && radius > 1e-4 / a) {
            return Err(Error::InvalidArgument(format!(
                "contour radius {radius} outside (1e-4/a, 1/(4a))"
            )));
        }
        if n_nodes < 8 {
            return Err(Error::InvalidArgument(
                "contour needs at least 8 nodes".into(),
            ));
        }
        Ok(Self {
            center,
            radius,
            n_nodes,
        })
    }

    /// Default radius rule around `center`: `min(1/(8a), d/4)`, where `d` is
    /// the distance to the nearest other singular point of `S`. The redundant
    /// poles and their mirror zeros are included automatically; `others`
    /// adds further points such as bound-state poles.
    pub fn around(
        p: &ModelParams,
        center: ComplexScalar,
        others: &[ComplexScalar],
    ) -> Result<Self> {
        let a = p.a();
        let same = 1e-8 / a;
        let reach = (center.im.abs() * 2.0 * a).ceil() as i64 + 2;
        let mut d = f64::INFINITY;
        let redundant = (1..=reach).flat_map(|n| [p.redundant_pole(n), p.redundant_pole(-n)]);
        for point in redundant.chain(others.iter().copied()).chain([-center]) {
            let dist = (point - center).norm();
            if dist > same {
                d = d.min(dist);
            }
        }
        Self::new(p, center, (0.125 / a).min(0.25 * d), DEFAULT_CONTOUR_NODES)
    }

    pub fn with_nodes(self, n_nodes: usize) -> Self {
        Self {
            n_nodes: n_nodes.max(8),
            ..self
        }
    }

    pub fn center(&self) -> ComplexScalar {
        self.center
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn n_nodes(&self) -> usize {
        self.n_nodes
    }
}

/// Trapezoidal rule for `∮ f(k) dk` on a positively oriented circle.
/// Stops at the first node where `f` fails and reports its index.
pub fn circle_integral<F>(
    f: F,
    center: ComplexScalar,
    radius: f64,
    n_nodes: usize,
) -> std::result::Result<(ComplexScalar, f64), usize>
where
    F: Fn(ComplexScalar) -> Option<ComplexScalar>,
{
    let mut sum = ComplexScalar::new(0.0, 0.0);
    let mut peak = 0.0f64;
    for j in 0..n_nodes {
        let theta = 2.0 * PI * j as f64 / n_nodes as f64;
        let offset = ComplexScalar::from_polar(radius, theta);
        let value = f(center + offset).ok_or(j)?;
        peak = peak.max(value.norm());
        // dk = i (k - center) dtheta
        sum += value * ComplexScalar::new(-offset.im, offset.re);
    }
    Ok((sum * (2.0 * PI / n_nodes as f64), peak))
}

fn s_on_circle(
    p: &ModelParams,
    radius: f64,
    spec: &ContourSpec,
) -> std::result::Result<(ComplexScalar, f64), usize> {
    circle_integral(
        |k| s_matrix(p, k).ok().filter(|s| s.norm() <= NODE_BLOWUP),
        spec.center,
        radius,
        spec.n_nodes,
    )
}

/// `∮ S(k) dk` around `spec.center`, i.e. `2 pi i` times the enclosed residue.
///
/// The same integral on a circle of twice the radius must agree, otherwise
/// a second singularity is nearby and the result is rejected.
pub fn contour_residue(p: &ModelParams, spec: &ContourSpec) -> Result<ComplexScalar> {
    let (inner, peak_inner) =
        s_on_circle(p, spec.radius, spec).map_err(|node| Error::PoleOnContour { node })?;
    let nan = ComplexScalar::new(f64::NAN, f64::NAN);
    let (outer, peak_outer) = s_on_circle(p, 2.0 * spec.radius, spec)
        .map_err(|_| Error::ProbeFailure { inner, outer: nan })?;
    let floor = 1e-13 * 4.0 * PI * spec.radius * peak_inner.max(peak_outer);
    let scale = inner.norm().max(outer.norm());
    if (inner - outer).norm() > 1e-9 * scale + floor {
        return Err(Error::ProbeFailure { inner, outer });
    }
    Ok(inner)
}
