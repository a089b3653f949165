//! Legendre curves reconstructed from the modulus `r = |γ₁|` of their first
//! component, and the first integrals of the constant mean curvature system.

use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use super::{legendre_angle, CurveJet, LegendreCurve};
use crate::error::{ensure_finite, Error, Result};
use crate::geometry::{AmbientQuadric, Complex, ComplexPair};
use crate::numeric::{cumulative_simpson, derivative, ParamGrid};
use crate::{DRIFT_FACTOR, EPS_ALG, EPS_ODE};

/// Samples of `r` and `r'` on a uniform grid.
#[derive(Clone, Debug, PartialEq)]
pub struct RadialProfile {
    params: Vec<f64>,
    r: Vec<f64>,
    dr: Vec<f64>,
}

impl RadialProfile {
    pub fn new(grid: &ParamGrid, r: Vec<f64>, dr: Vec<f64>) -> Result<Self> {
        if r.len() != grid.len() {
            return Err(Error::ShapeMismatch { expected: grid.len(), found: r.len() });
        }
        if dr.len() != grid.len() {
            return Err(Error::ShapeMismatch { expected: grid.len(), found: dr.len() });
        }
        for (&a, &b) in r.iter().zip(&dr) {
            ensure_finite(a, "radial profile")?;
            ensure_finite(b, "radial profile derivative")?;
        }
        Ok(RadialProfile { params: grid.samples(), r, dr })
    }

    /// Sample `f(x) = (r, r')` on the grid `start..=end`.
    pub fn from_fn<F: Fn(f64) -> (f64, f64)>(start: f64, end: f64, step: f64, f: F) -> Result<Self> {
        let grid = ParamGrid::new(start, end, step)?;
        let (r, dr) = grid.samples().into_iter().map(f).unzip();
        RadialProfile::new(&grid, r, dr)
    }

    pub fn params(&self) -> &[f64] {
        &self.params
    }

    pub fn r(&self) -> &[f64] {
        &self.r
    }

    pub fn dr(&self) -> &[f64] {
        &self.dr
    }

    pub fn step(&self) -> f64 {
        (self.params[self.params.len() - 1] - self.params[0]) / (self.params.len() - 1) as f64
    }
}

/// Assemble the curve `γ₁ = r e^{iΦ₁}`, `γ₂ = √(1 ∓ r²) e^{iΦ₂}` with
/// `Φ₁' = √R / r` and `Φ₂' = r√R / (r² − 1)` on `S³`, `r√R / (1 + r²)` on
/// `H³₁`, where `R = 1 ∓ r² − r'²`. The phases are integrated by cumulative
/// Simpson quadrature from zero at the first sample.
pub fn from_radial_profile(ambient: AmbientQuadric, profile: &RadialProfile) -> Result<LegendreCurve> {
    let eps = ambient.signature();
    let n = profile.params.len();
    let mut root_r = Vec::with_capacity(n);
    let mut rate1 = Vec::with_capacity(n);
    let mut rate2 = Vec::with_capacity(n);
    for i in 0..n {
        let (x, r, dr) = (profile.params[i], profile.r[i], profile.dr[i]);
        if !(r > 0.0) {
            return Err(Error::Domain { what: "radius", index: i, param: x, value: r });
        }
        if ambient == AmbientQuadric::Sphere3 && !(r < 1.0) {
            return Err(Error::Domain { what: "radius", index: i, param: x, value: r });
        }
        let radicand = 1.0 - eps * r * r - dr * dr;
        if radicand < -EPS_ALG {
            return Err(Error::Domain { what: "radial radicand", index: i, param: x, value: radicand });
        }
        let root = radicand.max(0.0).sqrt();
        root_r.push(root);
        rate1.push(root / r);
        rate2.push(-eps * r * root / (1.0 - eps * r * r));
    }
    let h = profile.step();
    let phase1 = cumulative_simpson(&rate1, h);
    let phase2 = cumulative_simpson(&rate2, h);

    let mut jets = Vec::with_capacity(n);
    for i in 0..n {
        let (r, dr) = (profile.r[i], profile.dr[i]);
        let rho2 = (1.0 - eps * r * r).sqrt();
        let drho2 = -eps * r * dr / rho2;
        let (e1, e2) = (Complex::cis(phase1[i]), Complex::cis(phase2[i]));
        let position = ComplexPair::new(e1 * r, e2 * rho2);
        let velocity = ComplexPair::new(
            e1 * Complex::new(dr, root_r[i]),
            e2 * Complex::new(drho2, rho2 * rate2[i]),
        );
        jets.push(CurveJet { param: profile.params[i], position, velocity, ambient });
    }
    let theta = legendre_angle(&jets, DRIFT_FACTOR * EPS_ODE)?;
    let curvature = derivative(&theta, h);
    LegendreCurve::from_samples(ambient, jets, curvature, DRIFT_FACTOR * EPS_ODE)
}

/// `(4ρ²r² ∓ λ)^{3/2}/(12ρ²) + μ − r√(1 ∓ r² − r'²)` per sample, upper signs
/// on `S³`, with `r = |γ₁|`. The product `r r'` is read off the jet as
/// `Re(γ₁'γ̄₁)`.
pub fn first_integral_residual(curve: &LegendreCurve, rho: f64, lambda: f64, mu: f64) -> Result<Vec<f64>> {
    if !(rho > 0.0 && rho.is_finite()) {
        return Err(Error::InvalidParameter { name: "rho", value: rho, expected: "> 0" });
    }
    ensure_finite(lambda, "lambda")?;
    ensure_finite(mu, "mu")?;
    let eps = curve.ambient().signature();
    let rho2 = rho * rho;
    curve
        .jets()
        .iter()
        .enumerate()
        .map(|(i, jet)| {
            let r2 = jet.position.z1.norm_sqr();
            let rdr = (jet.velocity.z1 * jet.position.z1.conj()).re;
            let inner = 4.0 * rho2 * r2 - eps * lambda;
            if inner < -EPS_ALG {
                return Err(Error::Domain { what: "first integral base", index: i, param: jet.param, value: inner });
            }
            let radicand = r2 * (1.0 - eps * r2) - rdr * rdr;
            if radicand < -EPS_ALG {
                return Err(Error::Domain { what: "first integral radicand", index: i, param: jet.param, value: radicand });
            }
            let lhs = inner.max(0.0).powf(1.5) / (12.0 * rho2) + mu;
            Ok(lhs - radicand.max(0.0).sqrt())
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{cmc_profile_hyperbolic, cmc_profile_sphere, geodesic_sphere, horizontal_circle_sphere};

    #[test]
    fn cosine_profile_is_great_circle() {
        let p = RadialProfile::from_fn(0.2, 1.3, 1e-3, |s| (s.cos(), -s.sin())).unwrap();
        let c = from_radial_profile(AmbientQuadric::Sphere3, &p).unwrap();
        for j in c.jets() {
            let exact = ComplexPair::from_reals(j.param.cos(), j.param.sin());
            assert!((j.position - exact).norm() < EPS_ODE);
        }
    }

    #[test]
    fn sinh_profile_is_hyperbolic_geodesic() {
        let p = RadialProfile::from_fn(0.1, 2.0, 1e-3, |t| (t.sinh(), t.cosh())).unwrap();
        let c = from_radial_profile(AmbientQuadric::AntiDeSitter3, &p).unwrap();
        for j in c.jets() {
            let exact = ComplexPair::from_reals(j.param.sinh(), j.param.cosh());
            assert!((j.position - exact).norm() < EPS_ODE);
        }
    }

    #[test]
    fn constant_profile_is_horizontal_circle() {
        let psi = 0.9_f64;
        let p = RadialProfile::from_fn(0.0, 3.0, 1e-3, |_| (psi.cos(), 0.0)).unwrap();
        let c = from_radial_profile(AmbientQuadric::Sphere3, &p).unwrap();
        let exact = horizontal_circle_sphere(psi, &ParamGrid::new(0.0, 3.0, 1e-3).unwrap()).unwrap();
        for (a, b) in c.jets().iter().zip(exact.jets()) {
            assert!((a.position - b.position).norm() < 1e-10);
        }
        let k = psi.tan() - 1.0 / psi.tan();
        assert!(c.curvature().iter().all(|x| (x - k).abs() < 1e-8));
    }

    #[test]
    fn domain_errors_name_the_sample() {
        let p = RadialProfile::from_fn(0.0, 1.0, 0.1, |s| (0.5 + s, 0.0)).unwrap();
        match from_radial_profile(AmbientQuadric::Sphere3, &p) {
            Err(Error::Domain { index, .. }) => assert_eq!(index, 5),
            other => panic!("{other:?}"),
        }
        let p = RadialProfile::from_fn(0.0, 1.0, 0.1, |_| (0.5, 2.0)).unwrap();
        assert!(matches!(from_radial_profile(AmbientQuadric::Sphere3, &p), Err(Error::Domain { .. })));
        let p = RadialProfile::from_fn(-1.0, 1.0, 0.1, |t| (t, 1.0)).unwrap();
        assert!(matches!(from_radial_profile(AmbientQuadric::AntiDeSitter3, &p), Err(Error::Domain { .. })));
    }

    #[test]
    fn cmc_first_integrals_vanish() {
        let g = ParamGrid::new(-3.0, 3.0, 1e-2).unwrap();
        for c in [cmc_profile_sphere(&g).unwrap(), cmc_profile_hyperbolic(&g).unwrap()] {
            let res = first_integral_residual(&c, 1.5, 0.0, 0.0).unwrap();
            assert!(res.iter().all(|r| r.abs() < 1e-8), "{:e}", res.iter().fold(0.0_f64, |m, r| m.max(r.abs())));
        }
    }

    #[test]
    fn rejects_non_positive_rho() {
        let g = ParamGrid::new(0.0, 1.0, 0.1).unwrap();
        let c = geodesic_sphere(0.0, core::f64::consts::PI, &g).unwrap();
        assert!(first_integral_residual(&c, 0.0, 0.0, 0.0).is_err());
    }
}
