use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use super::radial::RadialProfile;
use crate::error::{Error, Result};
use crate::geometry::AmbientQuadric;
use crate::numeric::NaturalSpline;
use crate::EPS_ALG;

/// A prescribed curvature function `k(x)` along arclength.
#[derive(Clone, Debug, PartialEq)]
pub enum CurvatureProfile {
    Constant(f64),
    /// `k(x) = slope · x + intercept`
    Linear { slope: f64, intercept: f64 },
    /// Natural cubic spline through samples on a strictly increasing grid.
    Tabulated(NaturalSpline),
    /// Curvature of the Legendre curve whose first-component modulus is a
    /// prescribed `r(x)`, tabulated on the profile grid.
    RadialDerived { ambient: AmbientQuadric, curvature: NaturalSpline },
}

impl CurvatureProfile {
    pub fn tabulated(x: Vec<f64>, k: Vec<f64>) -> Result<Self> {
        Ok(CurvatureProfile::Tabulated(NaturalSpline::new(x, k)?))
    }

    /// `k = −(r'' − R/r ± r)/√R` with `R = 1 ∓ r² − r'²` (upper signs on `S³`),
    /// the curvature forced by a prescribed modulus `r = |γ₁|`.
    pub fn radial_derived(ambient: AmbientQuadric, radial: &RadialProfile) -> Result<Self> {
        let eps = ambient.signature();
        let params = radial.params();
        let dr_spline = NaturalSpline::new(params.to_vec(), radial.dr().to_vec())?;
        let mut k = Vec::with_capacity(params.len());
        for (i, (&x, (&r, &dr))) in params.iter().zip(radial.r().iter().zip(radial.dr())).enumerate() {
            let radicand = 1.0 - eps * r * r - dr * dr;
            if !(radicand > EPS_ALG) || !(r > 0.0) {
                return Err(Error::Domain { what: "radial curvature radicand", index: i, param: x, value: radicand });
            }
            let (_, ddr, _) = dr_spline.eval_all(x);
            let root = radicand.sqrt();
            k.push(-(ddr - radicand / r + eps * r) / root);
        }
        Ok(CurvatureProfile::RadialDerived { ambient, curvature: NaturalSpline::new(params.to_vec(), k)? })
    }

    pub fn eval(&self, x: f64) -> f64 {
        match self {
            CurvatureProfile::Constant(c) => *c,
            CurvatureProfile::Linear { slope, intercept } => slope * x + intercept,
            CurvatureProfile::Tabulated(s) => s.eval(x),
            CurvatureProfile::RadialDerived { curvature, .. } => curvature.eval(x),
        }
    }

    /// Interval on which the profile is defined; `None` means everywhere.
    pub fn domain(&self) -> Option<(f64, f64)> {
        match self {
            CurvatureProfile::Tabulated(s) => Some(s.domain()),
            CurvatureProfile::RadialDerived { curvature, .. } => Some(curvature.domain()),
            _ => None,
        }
    }

    pub fn check_span(&self, start: f64, end: f64) -> Result<()> {
        if let Some((lo, hi)) = self.domain() {
            let slack = 1e-9 * (1.0 + hi.abs().max(lo.abs()));
            if start < lo - slack {
                return Err(Error::InvalidParameter { name: "span start", value: start, expected: "inside profile domain" });
            }
            if end > hi + slack {
                return Err(Error::InvalidParameter { name: "span end", value: end, expected: "inside profile domain" });
            }
        }
        Ok(())
    }
}
