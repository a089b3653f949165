//! Hopf fibrations `S³ → S²(1/2)` and `H³₁ → H²(−1/2)`, and horizontal lifts.
//!
//! `π(z, w) = ½(2zw̄, |z|² ∓ |w|²)`, upper sign on the sphere. Legendre curves
//! are exactly the horizontal curves of these fibrations.

use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use super::{integrate_from_jet, CurvatureProfile, LegendreCurve};
use crate::error::{Error, Result};
use crate::geometry::{AmbientQuadric, Complex, ComplexPair};
use crate::numeric::{fourth_order_derivatives, NaturalSpline, ParamGrid};
use crate::{DRIFT_FACTOR, EPS_ODE};

/// Base surface of the fibration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProjectionTarget {
    /// `S²(1/2)`: `x₁² + x₂² + x₃² = 1/4`.
    SpherePatch,
    /// `H²(−1/2)`: `x₁² + x₂² − x₃² = −1/4`, `x₃ >= 1/2`.
    HyperbolicSheet,
}

impl ProjectionTarget {
    pub fn of(ambient: AmbientQuadric) -> Self {
        match ambient {
            AmbientQuadric::Sphere3 => ProjectionTarget::SpherePatch,
            AmbientQuadric::AntiDeSitter3 => ProjectionTarget::HyperbolicSheet,
        }
    }

    pub fn ambient(self) -> AmbientQuadric {
        match self {
            ProjectionTarget::SpherePatch => AmbientQuadric::Sphere3,
            ProjectionTarget::HyperbolicSheet => AmbientQuadric::AntiDeSitter3,
        }
    }

    /// `+1` for the Euclidean metric, `−1` for the Lorentz metric `dx₁² + dx₂² − dx₃²`.
    fn third_sign(self) -> f64 {
        match self {
            ProjectionTarget::SpherePatch => 1.0,
            ProjectionTarget::HyperbolicSheet => -1.0,
        }
    }

    pub fn metric(self, a: [f64; 3], b: [f64; 3]) -> f64 {
        a[0] * b[0] + a[1] * b[1] + self.third_sign() * a[2] * b[2]
    }

    /// `x₁² + x₂² ± x₃² ∓ 1/4`, zero on the target.
    pub fn residual(self, x: [f64; 3]) -> f64 {
        self.metric(x, x) - 0.25 * self.third_sign()
    }
}

pub fn hopf_point(p: ComplexPair, ambient: AmbientQuadric) -> [f64; 3] {
    let zw = p.z1 * p.z2.conj();
    [zw.re, zw.im, 0.5 * (p.z1.norm_sqr() - ambient.signature() * p.z2.norm_sqr())]
}

/// `dπ_p(v)`.
pub fn hopf_velocity(p: ComplexPair, v: ComplexPair, ambient: AmbientQuadric) -> [f64; 3] {
    let d = v.z1 * p.z2.conj() + p.z1 * v.z2.conj();
    let d3 = (v.z1 * p.z1.conj()).re - ambient.signature() * (v.z2 * p.z2.conj()).re;
    [d.re, d.im, d3]
}

pub fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

/// A sampled curve on `S²(1/2)` or `H²(−1/2)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjectedCurve {
    pub target: ProjectionTarget,
    pub params: Vec<f64>,
    pub points: Vec<[f64; 3]>,
}

impl ProjectedCurve {
    pub fn new(target: ProjectionTarget, params: Vec<f64>, points: Vec<[f64; 3]>) -> Result<Self> {
        if params.len() != points.len() {
            return Err(Error::ShapeMismatch { expected: params.len(), found: points.len() });
        }
        if params.len() < 6 {
            return Err(Error::ShapeMismatch { expected: 6, found: params.len() });
        }
        for x in &points {
            for c in x {
                crate::error::ensure_finite(*c, "projected point")?;
            }
        }
        Ok(ProjectedCurve { target, params, points })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn step(&self) -> f64 {
        (self.params[self.len() - 1] - self.params[0]) / (self.len() - 1) as f64
    }

    pub fn max_residual(&self) -> f64 {
        self.points.iter().map(|&x| self.target.residual(x).abs()).fold(0.0, f64::max)
    }

    /// Rotation by `phi` about the `x₃`-axis.
    pub fn rotated(&self, phi: f64) -> ProjectedCurve {
        let (s, c) = phi.sin_cos();
        let points = self.points.iter().map(|x| [c * x[0] - s * x[1], s * x[0] + c * x[1], x[2]]).collect();
        ProjectedCurve { target: self.target, params: self.params.clone(), points }
    }

    /// First and second derivatives of the points by fourth-order differences.
    #[allow(clippy::type_complexity)]
    pub fn derivatives(&self) -> Result<(Vec<[f64; 3]>, Vec<[f64; 3]>)> {
        let h = self.step();
        let mut d1 = alloc::vec![[0.0; 3]; self.len()];
        let mut d2 = alloc::vec![[0.0; 3]; self.len()];
        for c in 0..3 {
            let comp: Vec<f64> = self.points.iter().map(|x| x[c]).collect();
            let (a, b) = fourth_order_derivatives(&comp, h)?;
            for i in 0..self.len() {
                d1[i][c] = a[i];
                d2[i][c] = b[i];
            }
        }
        Ok((d1, d2))
    }

    /// Speed in the target metric.
    pub fn speeds(&self) -> Result<Vec<f64>> {
        let (d1, _) = self.derivatives()?;
        Ok(d1.iter().map(|&v| self.target.metric(v, v).abs().sqrt()).collect())
    }
}

pub fn hopf_project(curve: &LegendreCurve) -> ProjectedCurve {
    let ambient = curve.ambient();
    ProjectedCurve {
        target: ProjectionTarget::of(ambient),
        params: curve.params(),
        points: curve.jets().iter().map(|j| hopf_point(j.position, ambient)).collect(),
    }
}

/// Geodesic curvature of a unit-speed projected curve: `⟨ξ'', 2ξ'×ξ⟩` on
/// `S²(1/2)` and `2ξ''·(ξ×ξ')` on `H²(−1/2)`, the Lorentz cross product
/// paired in the Lorentz metric.
pub fn geodesic_curvature(projected: &ProjectedCurve) -> Result<Vec<f64>> {
    let (d1, d2) = projected.derivatives()?;
    Ok(projected
        .points
        .iter()
        .zip(d1.iter().zip(&d2))
        .map(|(&x, (&v, &a))| match projected.target {
            ProjectionTarget::SpherePatch => 2.0 * dot(a, cross(v, x)),
            ProjectionTarget::HyperbolicSheet => 2.0 * dot(a, cross(x, v)),
        })
        .collect())
}

/// Horizontal lift of a unit-speed projected curve, integrated on its own grid.
///
/// The initial point has its larger component real, times `e^{i phase}`; the
/// initial velocity is the horizontal vector projecting to `ξ'(0)`, and the
/// curvature is the geodesic curvature of `ξ` interpolated by a natural spline.
pub fn horizontal_lift(projected: &ProjectedCurve, phase: f64) -> Result<LegendreCurve> {
    crate::error::ensure_finite(phase, "lift phase")?;
    let ambient = projected.target.ambient();
    let gate = DRIFT_FACTOR * EPS_ODE;
    for (i, &x) in projected.points.iter().enumerate() {
        let r = projected.target.residual(x);
        if !(r.abs() <= gate) {
            return Err(Error::Domain { what: "projected quadric residual", index: i, param: projected.params[i], value: r });
        }
    }
    let speeds = projected.speeds()?;
    for (i, &v) in speeds.iter().enumerate() {
        if !((v - 1.0).abs() <= gate) {
            return Err(Error::NotUnitSpeed { index: i, speed: v });
        }
    }

    let x0 = projected.points[0];
    let zw = Complex::new(x0[0], x0[1]);
    let eps = ambient.signature();
    // |z|² + eps |w|² = level and |z|² − eps |w|² = 2 x₃
    let level = ambient.level();
    let m1 = (0.5 * level + x0[2]).max(0.0);
    let m2 = (eps * (0.5 * level - x0[2])).max(0.0);
    let (z, w) = if m1 >= m2 {
        let z = m1.sqrt();
        (Complex::new(z, 0.0), zw.conj() / z)
    } else {
        let w = m2.sqrt();
        (zw / w, Complex::new(w, 0.0))
    };
    let gauge = Complex::cis(phase);
    let p0 = ComplexPair::new(z, w).scale(gauge);

    let e1 = match ambient {
        AmbientQuadric::Sphere3 => ComplexPair::new(-p0.z2.conj(), p0.z1.conj()),
        AmbientQuadric::AntiDeSitter3 => ComplexPair::new(p0.z2.conj(), p0.z1.conj()),
    };
    let e2 = e1.mul_i();
    let (d1, _) = projected.derivatives()?;
    let target = projected.target;
    let a = target.metric(d1[0], hopf_velocity(p0, e1, ambient));
    let b = target.metric(d1[0], hopf_velocity(p0, e2, ambient));
    let mut v0 = e1 * a + e2 * b;
    let speed = ambient.form_sqr(v0);
    if !(speed > 0.0) {
        return Err(Error::NotUnitSpeed { index: 0, speed });
    }
    v0 = v0 * (1.0 / speed.sqrt());

    let kappa = geodesic_curvature(projected)?;
    let profile = CurvatureProfile::Tabulated(NaturalSpline::new(projected.params.clone(), kappa)?);
    let n = projected.len();
    let grid = ParamGrid::with_intervals(projected.params[0], projected.params[n - 1], n - 1)?;
    integrate_from_jet(ambient, &profile, p0, v0, &grid)
}
