use alloc::vec::Vec;

use super::{CurveJet, CurvatureProfile, InitialCondition, LegendreCurve};
use crate::error::{Error, Result};
use crate::geometry::{AmbientQuadric, Complex, ComplexPair};
use crate::numeric::ParamGrid;
use crate::{DRIFT_FACTOR, EPS_ODE};

/// Integrate the Legendre ODE for a prescribed curvature with classical RK4,
/// starting from the canonical initial jet at the first grid point.
pub fn integrate_legendre(
    ambient: AmbientQuadric,
    profile: &CurvatureProfile,
    ic: InitialCondition,
    grid: &ParamGrid,
) -> Result<LegendreCurve> {
    if ic.ambient() != ambient {
        return Err(Error::AmbientMismatch { expected: ambient, found: ic.ambient() });
    }
    let (p, v) = ic.jet();
    integrate_from_jet(ambient, profile, p, v, grid)
}

/// As [`integrate_legendre`] but from an arbitrary initial jet, which must
/// itself satisfy the curve invariants.
pub fn integrate_from_jet(
    ambient: AmbientQuadric,
    profile: &CurvatureProfile,
    position: ComplexPair,
    velocity: ComplexPair,
    grid: &ParamGrid,
) -> Result<LegendreCurve> {
    profile.check_span(grid.start(), grid.end())?;
    position.ensure_finite("initial position")?;
    velocity.ensure_finite("initial velocity")?;
    let gate = DRIFT_FACTOR * EPS_ODE;
    let sigma = ambient.signature();
    let h = grid.step();
    let accel = |x: f64, p: ComplexPair, v: ComplexPair| -> ComplexPair {
        v.scale(Complex::new(0.0, profile.eval(x))) - p * sigma
    };

    let n = grid.len();
    let mut jets = Vec::with_capacity(n);
    let mut curvature = Vec::with_capacity(n);
    let (mut p, mut v) = (position, velocity);
    for i in 0..n {
        let x = grid.at(i);
        let jet = CurveJet { param: x, position: p, velocity: v, ambient };
        let d = jet.defects();
        if !(d.max() <= gate) {
            let (invariant, residual) = d.worst();
            return Err(Error::InvariantDrift { invariant, index: i, param: x, residual });
        }
        jets.push(jet);
        curvature.push(profile.eval(x));
        if i + 1 == n {
            break;
        }

        let k1p = v;
        let k1v = accel(x, p, v);
        let k2p = v + k1v * (0.5 * h);
        let k2v = accel(x + 0.5 * h, p + k1p * (0.5 * h), k2p);
        let k3p = v + k2v * (0.5 * h);
        let k3v = accel(x + 0.5 * h, p + k2p * (0.5 * h), k3p);
        let k4p = v + k3v * h;
        let k4v = accel(x + h, p + k3p * h, k4p);
        p += (k1p + k2p * 2.0 + k3p * 2.0 + k4p) * (h / 6.0);
        v += (k1v + k2v * 2.0 + k3v * 2.0 + k4v) * (h / 6.0);
        if !p.is_finite() || !v.is_finite() {
            return Err(Error::NonFinite { what: "integrated jet" });
        }
    }
    LegendreCurve::from_samples(ambient, jets, curvature, gate)
}
