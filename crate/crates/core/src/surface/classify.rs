use core::fmt;

#[allow(unused_imports)]
use num_traits::Float;

use super::SurfaceGrid;
use crate::curve::LegendreCurve;
use crate::numeric::simpson_weights;
use crate::{DRIFT_FACTOR, EPS_ODE};

/// Joint least-squares fit of `k_γ² = 4ρ²|γ₁|² − λ` and `k_α² = 4ρ²|α₁|² + λ`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CmcFit {
    /// `None` when the fitted `4ρ²` is not positive.
    pub rho: Option<f64>,
    pub lambda: f64,
    /// Largest absolute misfit in squared curvature.
    pub residual: f64,
    /// Both moduli constant: the fit is exact for any flat torus and says
    /// nothing beyond parallel mean curvature.
    pub degenerate: bool,
}

/// Affine fits `k_α(t) = a t + b`, `k_γ(s) = a_γ s + c`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HmFit {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    /// `|a + a_γ|`, zero when the slopes are opposite.
    pub slope_sum: f64,
    /// Largest of the two affine misfits and the slope sum.
    pub residual: f64,
}

/// The Willmore functional evaluated two ways.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WillmoreValue {
    /// `L(γ)/4 ∫k_α² dt + L(α)/4 ∫k_γ² ds`
    pub split: f64,
    /// `1/4 ∫∫(k_α² + k_γ²) dt ds`
    pub double_integral: f64,
}

impl WillmoreValue {
    pub fn relative_gap(&self) -> f64 {
        let scale = self.split.abs().max(self.double_integral.abs());
        if scale == 0.0 {
            0.0
        } else {
            (self.split - self.double_integral).abs() / scale
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Verdicts {
    pub minimal: bool,
    pub parallel_h: bool,
    pub cmc: bool,
    pub hamiltonian_minimal: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Label {
    Minimal,
    ParallelH,
    Cmc,
    HamiltonianMinimal,
    Generic,
}

impl Label {
    pub fn as_str(self) -> &'static str {
        match self {
            Label::Minimal => "minimal",
            Label::ParallelH => "parallel-H (flat torus)",
            Label::Cmc => "cmc",
            Label::HamiltonianMinimal => "hamiltonian-minimal",
            Label::Generic => "generic",
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ClassificationReport {
    /// `sup|k_γ| + sup|k_α|`
    pub minimal_residual: f64,
    /// Larger of the oscillations of `|γ₁|` and `|α₁|`.
    pub parallel_h_residual: f64,
    pub cmc_fit: CmcFit,
    pub hm_fit: HmFit,
    pub willmore: WillmoreValue,
    pub sphere_radius: Option<f64>,
    pub threshold: f64,
    pub verdicts: Verdicts,
    pub label: Label,
}

fn oscillation(values: &[f64]) -> f64 {
    let (lo, hi) = values.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)));
    hi - lo
}

fn sup_abs(values: &[f64]) -> f64 {
    values.iter().fold(0.0, |m, v| m.max(v.abs()))
}

/// Least-squares line `y = slope x + intercept` and its largest misfit.
fn affine_fit(x: &[f64], y: &[f64]) -> (f64, f64, f64) {
    let n = x.len() as f64;
    let xm = x.iter().sum::<f64>() / n;
    let ym = y.iter().sum::<f64>() / n;
    let sxx: f64 = x.iter().map(|v| (v - xm) * (v - xm)).sum();
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - xm) * (b - ym)).sum();
    let slope = if sxx > 0.0 { sxy / sxx } else { 0.0 };
    let intercept = ym - slope * xm;
    let misfit = x.iter().zip(y).map(|(a, b)| (b - slope * a - intercept).abs()).fold(0.0, f64::max);
    (slope, intercept, misfit)
}

fn cmc_fit(alpha: &LegendreCurve, gamma: &LegendreCurve, threshold: f64) -> CmcFit {
    // rows (r², sign) · (X, λ) = k², sign −1 on γ and +1 on α
    let rows = || {
        let g = gamma.first_modulus().into_iter().zip(gamma.curvature().iter().copied()).map(|(r, k)| (r * r, -1.0, k * k));
        let a = alpha.first_modulus().into_iter().zip(alpha.curvature().iter().copied()).map(|(r, k)| (r * r, 1.0, k * k));
        g.chain(a)
    };
    let (mut m11, mut m12, mut m22, mut b1, mut b2) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for (x, s, y) in rows() {
        m11 += x * x;
        m12 += x * s;
        m22 += s * s;
        b1 += x * y;
        b2 += s * y;
    }
    let det = m11 * m22 - m12 * m12;
    let (big_x, lambda) = if det.abs() > 1e-14 * (m11 * m22).max(f64::MIN_POSITIVE) {
        ((b1 * m22 - b2 * m12) / det, (m11 * b2 - m12 * b1) / det)
    } else {
        (b1 / m11.max(f64::MIN_POSITIVE), 0.0)
    };
    let residual = rows().map(|(x, s, y)| (x * big_x + s * lambda - y).abs()).fold(0.0, f64::max);
    let degenerate = oscillation(&gamma.first_modulus()) < threshold && oscillation(&alpha.first_modulus()) < threshold;
    CmcFit { rho: (big_x > 0.0).then(|| 0.5 * big_x.sqrt()), lambda, residual, degenerate }
}

fn hm_fit(alpha: &LegendreCurve, gamma: &LegendreCurve) -> HmFit {
    let (a, b, ra) = affine_fit(&alpha.params(), alpha.curvature());
    let (ag, c, rg) = affine_fit(&gamma.params(), gamma.curvature());
    let slope_sum = (a + ag).abs();
    HmFit { a, b, c, slope_sum, residual: ra.max(rg).max(slope_sum) }
}

/// Both quadrature forms of `W = 1/4 ∫∫ (k_α² + k_γ²) dt ds`.
pub fn willmore_functional(alpha: &LegendreCurve, gamma: &LegendreCurve) -> WillmoreValue {
    let wa = simpson_weights(alpha.len(), alpha.step());
    let wg = simpson_weights(gamma.len(), gamma.step());
    let int_a: f64 = wa.iter().zip(alpha.curvature()).map(|(w, k)| w * k * k).sum();
    let int_g: f64 = wg.iter().zip(gamma.curvature()).map(|(w, k)| w * k * k).sum();
    let split = 0.25 * (gamma.length() * int_a + alpha.length() * int_g);

    let ka = alpha.curvature();
    let kg = gamma.curvature();
    let mut double_integral = 0.0;
    for (wi, ki) in wa.iter().zip(ka) {
        let mut row = 0.0;
        for (wj, kj) in wg.iter().zip(kg) {
            row += wj * (ki * ki + kj * kj);
        }
        double_integral += wi * row;
    }
    WillmoreValue { split, double_integral: 0.25 * double_integral }
}

/// Common value of `|φ|` when it varies by less than `EPS_ODE` over the grid.
pub fn sphere_radius(surface: &SurfaceGrid) -> Option<f64> {
    let radius = surface.radius();
    let r = radius.data();
    if oscillation(r) < EPS_ODE {
        Some(r.iter().sum::<f64>() / r.len() as f64)
    } else {
        None
    }
}

pub fn classify(surface: &SurfaceGrid) -> ClassificationReport {
    let (alpha, gamma) = (surface.alpha(), surface.gamma());
    let threshold = DRIFT_FACTOR * EPS_ODE;
    let minimal_residual = sup_abs(gamma.curvature()) + sup_abs(alpha.curvature());
    let parallel_h_residual = oscillation(&gamma.first_modulus()).max(oscillation(&alpha.first_modulus()));
    let cmc_fit = cmc_fit(alpha, gamma, threshold);
    let hm_fit = hm_fit(alpha, gamma);
    let willmore = willmore_functional(alpha, gamma);
    let sphere_radius = sphere_radius(surface);

    let minimal = minimal_residual < threshold;
    let verdicts = Verdicts {
        minimal,
        parallel_h: !minimal && parallel_h_residual < threshold,
        cmc: !minimal && cmc_fit.rho.is_some() && cmc_fit.residual < threshold,
        hamiltonian_minimal: hm_fit.residual < threshold,
    };
    let label = if verdicts.minimal {
        Label::Minimal
    } else if verdicts.parallel_h {
        Label::ParallelH
    } else if verdicts.cmc {
        Label::Cmc
    } else if verdicts.hamiltonian_minimal {
        Label::HamiltonianMinimal
    } else {
        Label::Generic
    };
    ClassificationReport {
        minimal_residual,
        parallel_h_residual,
        cmc_fit,
        hm_fit,
        willmore,
        sphere_radius,
        threshold,
        verdicts,
        label,
    }
}
