//! Unit-speed Legendre curves in `S³` and `H³₁`.
//!
//! A Legendre curve in `S³` solves `γ'' − i k γ' + γ = 0` and one in `H³₁`
//! solves `α'' − i k α' − α = 0`, where `k` is the curvature. Its Legendre
//! angle `θ`, defined by `e^{iθ} = det_C(γ, γ')`, satisfies `θ' = k`.
//!
//! On `H³₁` every invariant is measured with the indefinite form
//! `z₁w̄₁ − z₂w̄₂`.

mod families;
mod hopf;
mod integrate;
mod profile;
mod radial;

use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, PI};

#[allow(unused_imports)]
use num_traits::Float;

pub use families::{
    cmc_hyperbolic_jet, cmc_profile_hyperbolic, cmc_profile_sphere, cmc_sphere_jet, constant_curvature_hyperbolic,
    constant_curvature_sphere, geodesic_hyperbolic, geodesic_sphere, horizontal_circle_hyperbolic,
    horizontal_circle_sphere, hyperbolic_branch, HyperbolicBranch, CMC_ARGUMENT_SCALE,
};
pub use hopf::{
    cross, geodesic_curvature, hopf_point, hopf_project, hopf_velocity, horizontal_lift, ProjectedCurve,
    ProjectionTarget,
};
pub use integrate::{integrate_from_jet, integrate_legendre};
pub use profile::CurvatureProfile;
pub use radial::{first_integral_residual, from_radial_profile, RadialProfile};

use crate::error::{Error, Invariant, Result};
use crate::geometry::{AmbientQuadric, Complex, ComplexPair};
use crate::numeric::{derivative, unwrap_angles};
use crate::{DRIFT_FACTOR, EPS_ODE};

/// Position and velocity of a curve at one arclength sample.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CurveJet {
    pub param: f64,
    pub position: ComplexPair,
    pub velocity: ComplexPair,
    pub ambient: AmbientQuadric,
}

/// Worst-case violation of each pointwise curve invariant.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct JetDefects {
    pub quadric: f64,
    pub speed: f64,
    /// `|γ'₁γ̄₁ ± γ'₂γ̄₂|`, real and imaginary part together.
    pub tangency: f64,
    /// `|⟨γ', iγ⟩|`, the imaginary part of the tangency form.
    pub legendre: f64,
}

impl JetDefects {
    pub fn max(self) -> f64 {
        self.quadric.max(self.speed).max(self.tangency).max(self.legendre)
    }

    pub fn merge(self, other: JetDefects) -> JetDefects {
        JetDefects {
            quadric: self.quadric.max(other.quadric),
            speed: self.speed.max(other.speed),
            tangency: self.tangency.max(other.tangency),
            legendre: self.legendre.max(other.legendre),
        }
    }

    fn worst(self) -> (Invariant, f64) {
        let mut worst = (Invariant::Quadric, self.quadric);
        for (inv, v) in [
            (Invariant::UnitSpeed, self.speed),
            (Invariant::Tangency, self.tangency),
            (Invariant::Legendre, self.legendre),
        ] {
            if v > worst.1 || v.is_nan() {
                worst = (inv, v);
            }
        }
        worst
    }
}

impl CurveJet {
    pub fn defects(&self) -> JetDefects {
        let q = self.ambient;
        let tangency = q.form(self.velocity, self.position);
        JetDefects {
            quadric: (q.form_sqr(self.position) - q.level()).abs(),
            speed: (q.form_sqr(self.velocity) - 1.0).abs(),
            tangency: tangency.norm(),
            legendre: tangency.im.abs(),
        }
    }

    /// Second derivative from the Legendre ODE: `i k γ' − γ` on `S³`, `i k α' + α` on `H³₁`.
    pub fn acceleration(&self, curvature: f64) -> ComplexPair {
        self.velocity.scale(Complex::new(0.0, curvature)) - self.position * self.ambient.signature()
    }

    /// `det_C(γ, γ')`, of unit modulus along a Legendre curve.
    pub fn determinant(&self) -> Complex {
        self.position.det(self.velocity)
    }
}

/// Initial jet `γ(0) = (cos ψ, sin ψ)`, `γ'(0) = e^{ia}(sin ψ, −cos ψ)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SphereIC {
    psi: f64,
    a: f64,
}

impl SphereIC {
    pub fn new(psi: f64, a: f64) -> Result<Self> {
        if !(0.0..=FRAC_PI_2).contains(&psi) {
            return Err(Error::InvalidParameter { name: "psi", value: psi, expected: "[0, π/2]" });
        }
        if !(a > -PI && a <= PI) {
            return Err(Error::InvalidParameter { name: "a", value: a, expected: "(−π, π]" });
        }
        Ok(SphereIC { psi, a })
    }

    pub fn psi(&self) -> f64 {
        self.psi
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn jet(&self) -> (ComplexPair, ComplexPair) {
        let (s, c) = self.psi.sin_cos();
        let phase = Complex::cis(self.a);
        (ComplexPair::from_reals(c, s), ComplexPair::from_reals(s, -c).scale(phase))
    }
}

/// Initial jet `α(0) = (sinh δ, cosh δ)`, `α'(0) = e^{ib}(cosh δ, sinh δ)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HyperbolicIC {
    delta: f64,
    b: f64,
}

impl HyperbolicIC {
    pub fn new(delta: f64, b: f64) -> Result<Self> {
        if !(delta >= 0.0 && delta.is_finite()) {
            return Err(Error::InvalidParameter { name: "delta", value: delta, expected: ">= 0" });
        }
        if !(b > -PI && b <= PI) {
            return Err(Error::InvalidParameter { name: "b", value: b, expected: "(−π, π]" });
        }
        Ok(HyperbolicIC { delta, b })
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn jet(&self) -> (ComplexPair, ComplexPair) {
        let (sh, ch) = (self.delta.sinh(), self.delta.cosh());
        let phase = Complex::cis(self.b);
        (ComplexPair::from_reals(sh, ch), ComplexPair::from_reals(ch, sh).scale(phase))
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum InitialCondition {
    Sphere(SphereIC),
    Hyperbolic(HyperbolicIC),
}

impl InitialCondition {
    pub fn ambient(&self) -> AmbientQuadric {
        match self {
            InitialCondition::Sphere(_) => AmbientQuadric::Sphere3,
            InitialCondition::Hyperbolic(_) => AmbientQuadric::AntiDeSitter3,
        }
    }

    pub fn jet(&self) -> (ComplexPair, ComplexPair) {
        match self {
            InitialCondition::Sphere(ic) => ic.jet(),
            InitialCondition::Hyperbolic(ic) => ic.jet(),
        }
    }
}

impl From<SphereIC> for InitialCondition {
    fn from(ic: SphereIC) -> Self {
        InitialCondition::Sphere(ic)
    }
}

impl From<HyperbolicIC> for InitialCondition {
    fn from(ic: HyperbolicIC) -> Self {
        InitialCondition::Hyperbolic(ic)
    }
}

/// A sampled unit-speed Legendre curve on a uniform arclength grid.
#[derive(Clone, Debug, PartialEq)]
pub struct LegendreCurve {
    ambient: AmbientQuadric,
    jets: Vec<CurveJet>,
    curvature: Vec<f64>,
    legendre_angle: Vec<f64>,
}

impl LegendreCurve {
    /// Validate the samples against every jet invariant (gate `tolerance`) and
    /// compute the unwrapped Legendre angle.
    pub fn from_samples(
        ambient: AmbientQuadric,
        jets: Vec<CurveJet>,
        curvature: Vec<f64>,
        tolerance: f64,
    ) -> Result<Self> {
        if jets.len() != curvature.len() {
            return Err(Error::ShapeMismatch { expected: jets.len(), found: curvature.len() });
        }
        if jets.len() < 2 {
            return Err(Error::ShapeMismatch { expected: 2, found: jets.len() });
        }
        for (i, jet) in jets.iter().enumerate() {
            if jet.ambient != ambient {
                return Err(Error::AmbientMismatch { expected: ambient, found: jet.ambient });
            }
            jet.position.ensure_finite("curve position")?;
            jet.velocity.ensure_finite("curve velocity")?;
            crate::error::ensure_finite(curvature[i], "curvature")?;
            let (invariant, residual) = jet.defects().worst();
            if !(residual <= tolerance) {
                return Err(Error::InvariantDrift { invariant, index: i, param: jet.param, residual });
            }
        }
        let legendre_angle = legendre_angle(&jets, DRIFT_FACTOR * EPS_ODE)?;
        Ok(LegendreCurve { ambient, jets, curvature, legendre_angle })
    }

    pub fn ambient(&self) -> AmbientQuadric {
        self.ambient
    }

    pub fn len(&self) -> usize {
        self.jets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.jets.is_empty()
    }

    pub fn jets(&self) -> &[CurveJet] {
        &self.jets
    }

    pub fn jet(&self, i: usize) -> &CurveJet {
        &self.jets[i]
    }

    pub fn params(&self) -> Vec<f64> {
        self.jets.iter().map(|j| j.param).collect()
    }

    pub fn param(&self, i: usize) -> f64 {
        self.jets[i].param
    }

    /// Sample spacing (grids are uniform).
    pub fn step(&self) -> f64 {
        (self.jets[self.len() - 1].param - self.jets[0].param) / (self.len() - 1) as f64
    }

    pub fn curvature(&self) -> &[f64] {
        &self.curvature
    }

    pub fn legendre_angle(&self) -> &[f64] {
        &self.legendre_angle
    }

    pub fn acceleration(&self, i: usize) -> ComplexPair {
        self.jets[i].acceleration(self.curvature[i])
    }

    /// Arclength of the sampled curve, `∫|γ'|` by Simpson's rule.
    pub fn length(&self) -> f64 {
        let speed: Vec<f64> = self.jets.iter().map(|j| self.ambient.form_sqr(j.velocity).abs().sqrt()).collect();
        crate::numeric::simpson(&speed, self.step())
    }

    /// `|γ₁|` (or `|α₁|`) per sample.
    pub fn first_modulus(&self) -> Vec<f64> {
        self.jets.iter().map(|j| j.position.z1.norm()).collect()
    }

    pub fn max_defects(&self) -> JetDefects {
        self.jets.iter().fold(JetDefects::default(), |acc, j| acc.merge(j.defects()))
    }

    /// Largest `|θ'_fd − k|` over the samples.
    pub fn angle_rate_defect(&self) -> f64 {
        curvature_of(self)
            .iter()
            .zip(&self.curvature)
            .map(|(fd, k)| (fd - k).abs())
            .fold(0.0, f64::max)
    }

    /// Every `stride`-th sample, always keeping the last one only if it falls on the stride.
    pub fn subsample(&self, stride: usize) -> LegendreCurve {
        let stride = stride.max(1);
        let pick = |v: &[f64]| v.iter().step_by(stride).copied().collect::<Vec<_>>();
        LegendreCurve {
            ambient: self.ambient,
            jets: self.jets.iter().step_by(stride).copied().collect(),
            curvature: pick(&self.curvature),
            legendre_angle: pick(&self.legendre_angle),
        }
    }

    /// Contiguous run of samples `[start, start + len)`.
    pub fn window(&self, start: usize, len: usize) -> LegendreCurve {
        let end = (start + len).min(self.len());
        LegendreCurve {
            ambient: self.ambient,
            jets: self.jets[start..end].to_vec(),
            curvature: self.curvature[start..end].to_vec(),
            legendre_angle: self.legendre_angle[start..end].to_vec(),
        }
    }

    /// Replace `γ` by `(e^{iφ}γ₁, γ₂)`, again a Legendre curve with the same curvature.
    pub fn rotate_first(&self, phi: f64) -> Result<LegendreCurve> {
        let phase = Complex::cis(phi);
        let jets = self
            .jets
            .iter()
            .map(|j| CurveJet {
                position: ComplexPair::new(phase * j.position.z1, j.position.z2),
                velocity: ComplexPair::new(phase * j.velocity.z1, j.velocity.z2),
                ..*j
            })
            .collect();
        LegendreCurve::from_samples(self.ambient, jets, self.curvature.clone(), DRIFT_FACTOR * EPS_ODE)
    }
}

/// Unwrapped Legendre angle `θ` with `e^{iθ} = det_C(γ, γ')`.
///
/// Fails when the determinant modulus leaves 1 by more than `tolerance`.
pub fn legendre_angle(jets: &[CurveJet], tolerance: f64) -> Result<Vec<f64>> {
    let mut raw = Vec::with_capacity(jets.len());
    for (i, jet) in jets.iter().enumerate() {
        let det = jet.determinant();
        let defect = (det.norm() - 1.0).abs();
        if !(defect <= tolerance) {
            return Err(Error::InvariantDrift {
                invariant: Invariant::DeterminantModulus,
                index: i,
                param: jet.param,
                residual: defect,
            });
        }
        raw.push(det.arg());
    }
    Ok(unwrap_angles(&raw))
}

/// Curvature recovered as the derivative of the unwrapped Legendre angle,
/// by fourth-order differences.
pub fn curvature_of(curve: &LegendreCurve) -> Vec<f64> {
    derivative(curve.legendre_angle(), curve.step())
}
