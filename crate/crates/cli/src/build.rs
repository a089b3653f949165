use lagsurf_core::curve::{
    cmc_profile_hyperbolic, cmc_profile_sphere, constant_curvature_hyperbolic, constant_curvature_sphere,
    geodesic_hyperbolic, geodesic_sphere, horizontal_circle_hyperbolic, horizontal_circle_sphere, integrate_legendre,
    CurvatureProfile, HyperbolicIC, LegendreCurve, SphereIC,
};
use lagsurf_core::numeric::ParamGrid;
use lagsurf_core::{AmbientQuadric, Result};

use crate::config::{CurveSpec, Family, ProfileSpec};

pub fn profile(spec: &ProfileSpec) -> Result<CurvatureProfile> {
    Ok(match spec {
        ProfileSpec::Constant(k) => CurvatureProfile::Constant(*k),
        ProfileSpec::Linear { slope, intercept } => CurvatureProfile::Linear { slope: *slope, intercept: *intercept },
        ProfileSpec::Tabulated { x, k } => CurvatureProfile::tabulated(x.clone(), k.clone())?,
    })
}

fn on_grid(family: &Family, grid: &ParamGrid) -> Result<LegendreCurve> {
    match family {
        Family::GeodesicSphere { psi, a } => geodesic_sphere(*psi, *a, grid),
        Family::GeodesicHyperbolic { delta, b } => geodesic_hyperbolic(*delta, *b, grid),
        Family::ConstantCurvatureSphere { k, psi, a } => constant_curvature_sphere(*k, SphereIC::new(*psi, *a)?, grid),
        Family::ConstantCurvatureHyperbolic { k, delta, b } => {
            constant_curvature_hyperbolic(*k, HyperbolicIC::new(*delta, *b)?, grid)
        }
        Family::HorizontalCircleSphere { psi } => horizontal_circle_sphere(*psi, grid),
        Family::HorizontalCircleHyperbolic { delta } => horizontal_circle_hyperbolic(*delta, grid),
        Family::CmcProfileSphere {} => cmc_profile_sphere(grid),
        Family::CmcProfileHyperbolic {} => cmc_profile_hyperbolic(grid),
        Family::IntegratedSphere { psi, a, profile: p } => {
            integrate_legendre(AmbientQuadric::Sphere3, &profile(p)?, SphereIC::new(*psi, *a)?.into(), grid)
        }
        Family::IntegratedHyperbolic { delta, b, profile: p } => {
            integrate_legendre(AmbientQuadric::AntiDeSitter3, &profile(p)?, HyperbolicIC::new(*delta, *b)?.into(), grid)
        }
    }
}

/// The curve on its own grid `start..=end` at `step`.
pub fn curve(spec: &CurveSpec) -> Result<LegendreCurve> {
    on_grid(&spec.family, &ParamGrid::new(spec.start, spec.end, spec.step)?)
}

/// The curve at exactly `n` evenly spaced samples of its span. Integrated
/// families are solved at the largest divisor of the sample spacing that does
/// not exceed `step`, then thinned.
pub fn curve_sampled(spec: &CurveSpec, n: usize) -> Result<LegendreCurve> {
    let intervals = n.saturating_sub(1).max(1);
    if spec.family.is_closed_form() {
        return on_grid(&spec.family, &ParamGrid::with_intervals(spec.start, spec.end, intervals)?);
    }
    let spacing = (spec.end - spec.start) / intervals as f64;
    let sub = (spacing / spec.step).ceil().max(1.0) as usize;
    let fine = on_grid(&spec.family, &ParamGrid::with_intervals(spec.start, spec.end, intervals * sub)?)?;
    Ok(fine.subsample(sub))
}
