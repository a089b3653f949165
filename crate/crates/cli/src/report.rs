//! Serializable summaries of curves and surfaces. Field order is the JSON key
//! order.

use lagsurf_core::curve::LegendreCurve;
use lagsurf_core::oracle::{
    fd_connection_products, fd_first_fundamental, fd_lagrangian_angle_and_h, fd_lagrangian_defect, StencilConfig,
    StencilOrder,
};
use lagsurf_core::surface::{classify, ClassificationReport, SurfaceGrid};
use lagsurf_core::{Complex, Result};
use serde::Serialize;

use crate::config::{CurveSpec, GridSpec};

#[derive(Clone, Debug, Serialize)]
pub struct CurveResiduals {
    pub quadric: f64,
    pub speed: f64,
    pub tangency: f64,
    pub legendre: f64,
    /// `sup |θ' − k|`
    pub angle_rate: f64,
    /// `sup |r'² ± r² + r⁴ − 1|`, only for the CMC profile families.
    pub first_integral: Option<f64>,
}

impl CurveResiduals {
    pub fn max(&self) -> f64 {
        [self.quadric, self.speed, self.tangency, self.legendre, self.angle_rate, self.first_integral.unwrap_or(0.0)]
            .into_iter()
            .fold(0.0, f64::max)
    }
}

/// `r'² ± r² + r⁴ − 1` per sample, upper sign on `S³`, with `r r' = Re(γ₁'γ̄₁)`
/// and `r'² = |γ₁'|²` where `r` vanishes.
pub fn first_integral(curve: &LegendreCurve) -> Vec<f64> {
    let eps = curve.ambient().signature();
    curve
        .jets()
        .iter()
        .map(|j| {
            let r = j.position.z1.norm();
            let dr2 = if r > 0.0 {
                ((j.velocity.z1 * j.position.z1.conj()).re / r).powi(2)
            } else {
                j.velocity.z1.norm_sqr()
            };
            dr2 + eps * r * r + r.powi(4) - 1.0
        })
        .collect()
}

pub fn curve_residuals(curve: &LegendreCurve, cmc: bool) -> CurveResiduals {
    let d = curve.max_defects();
    CurveResiduals {
        quadric: d.quadric,
        speed: d.speed,
        tangency: d.tangency,
        legendre: d.legendre,
        angle_rate: curve.angle_rate_defect(),
        first_integral: cmc.then(|| first_integral(curve).iter().fold(0.0_f64, |m, v| m.max(v.abs()))),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CurveReport {
    pub spec: CurveSpec,
    pub ambient: &'static str,
    pub samples: usize,
    pub tolerance: f64,
    pub residuals: CurveResiduals,
    pub pass: bool,
}

impl CurveReport {
    pub fn new(spec: &CurveSpec, curve: &LegendreCurve, tolerance: f64) -> Self {
        let residuals = curve_residuals(curve, spec.family.is_cmc());
        CurveReport {
            spec: spec.clone(),
            ambient: curve.ambient().name(),
            samples: curve.len(),
            tolerance,
            pass: residuals.max() < tolerance,
            residuals,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CmcFitJson {
    pub rho: Option<f64>,
    pub lambda: f64,
    pub residual: f64,
    pub degenerate: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct HmFitJson {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub slope_sum: f64,
    pub residual: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerdictsJson {
    pub minimal: bool,
    pub parallel_h: bool,
    pub cmc: bool,
    pub hamiltonian_minimal: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassificationJson {
    pub label: &'static str,
    pub minimal_residual: f64,
    pub parallel_h_residual: f64,
    pub cmc_fit: CmcFitJson,
    pub hm_fit: HmFitJson,
    pub sphere_radius: Option<f64>,
    pub threshold: f64,
    pub verdicts: VerdictsJson,
}

impl From<&ClassificationReport> for ClassificationJson {
    fn from(r: &ClassificationReport) -> Self {
        ClassificationJson {
            label: r.label.as_str(),
            minimal_residual: r.minimal_residual,
            parallel_h_residual: r.parallel_h_residual,
            cmc_fit: CmcFitJson {
                rho: r.cmc_fit.rho,
                lambda: r.cmc_fit.lambda,
                residual: r.cmc_fit.residual,
                degenerate: r.cmc_fit.degenerate,
            },
            hm_fit: HmFitJson {
                a: r.hm_fit.a,
                b: r.hm_fit.b,
                c: r.hm_fit.c,
                slope_sum: r.hm_fit.slope_sum,
                residual: r.hm_fit.residual,
            },
            sphere_radius: r.sphere_radius,
            threshold: r.threshold,
            verdicts: VerdictsJson {
                minimal: r.verdicts.minimal,
                parallel_h: r.verdicts.parallel_h,
                cmc: r.verdicts.cmc,
                hamiltonian_minimal: r.verdicts.hamiltonian_minimal,
            },
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct WillmoreJson {
    pub split: f64,
    pub double_integral: f64,
    pub relative_gap: f64,
}

/// Gated residuals computed from the closed formulas. The curve entries are the
/// pointwise jet invariants only.
#[derive(Clone, Debug, Serialize)]
pub struct AnalyticResiduals {
    pub alpha_curve: f64,
    pub gamma_curve: f64,
    pub conformality: f64,
    pub lagrangian: f64,
    pub alpha_modulus: f64,
    /// `sup |e^{iβ} + e^{i(θ_γ + θ_α)}|`
    pub additive_angle: f64,
}

impl AnalyticResiduals {
    pub fn max(&self) -> f64 {
        [self.alpha_curve, self.gamma_curve, self.conformality, self.lagrangian, self.alpha_modulus, self.additive_angle]
            .into_iter()
            .fold(0.0, f64::max)
    }
}

/// Finite-difference gaps against the closed formulas, interior points only.
#[derive(Clone, Debug, Serialize)]
pub struct OracleResiduals {
    pub order: u32,
    pub h_t: f64,
    pub h_s: f64,
    /// `sup max(|E − e^{2u}|, |G − e^{2u}|, |F|)`
    pub first_fundamental: f64,
    pub lagrangian: f64,
    pub mean_curvature: f64,
    /// `sup |H_fd − H| / max(1, |H|)`, bounded where `e^{2u}` is small and `|H|` large.
    pub mean_curvature_relative: f64,
    pub connection_products: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct SurfaceReport {
    pub alpha: CurveSpec,
    pub gamma: CurveSpec,
    pub grid: GridSpec,
    pub tolerance: f64,
    pub classification: ClassificationJson,
    pub willmore: WillmoreJson,
    pub analytic: AnalyticResiduals,
    pub oracle: Option<OracleResiduals>,
    pub pass: bool,
}

pub fn additive_angle_residual(surface: &SurfaceGrid) -> Result<f64> {
    let beta = surface.lagrangian_angle()?;
    let (ta, tg) = (surface.alpha().legendre_angle(), surface.gamma().legendre_angle());
    let mut worst = 0.0_f64;
    for (i, a) in ta.iter().enumerate() {
        for (j, g) in tg.iter().enumerate() {
            worst = worst.max((Complex::cis(beta.get(i, j)) + Complex::cis(a + g)).norm());
        }
    }
    Ok(worst)
}

pub fn oracle_residuals(surface: &SurfaceGrid) -> Result<OracleResiduals> {
    let cfg = StencilConfig::for_surface(surface, StencilOrder::Second)?;
    let pos = surface.position();
    let ff = fd_first_fundamental(pos, &cfg)?
        .sup_against(surface.conformal_factor(), |f, e| (f.e - e).abs().max((f.g - e).abs()).max(f.f.abs()));
    let lag = fd_lagrangian_defect(pos, &cfg)?.sup(f64::abs);
    let fd_h = fd_lagrangian_angle_and_h(pos, &cfg)?.mean_curvature;
    let analytic_h = surface.mean_curvature();
    let h = fd_h.sup_against(&analytic_h, |a, b| (a - b).norm());
    let h_rel = fd_h.sup_against(&analytic_h, |a, b| (a - b).norm() / b.norm().max(1.0));
    let conn = fd_connection_products(pos, &cfg)?.sup_against(&surface.connection_products(), |a, b| a.max_abs_diff(&b));
    Ok(OracleResiduals {
        order: cfg.order().accuracy(),
        h_t: cfg.h_t(),
        h_s: cfg.h_s(),
        first_fundamental: ff,
        lagrangian: lag,
        mean_curvature: h,
        mean_curvature_relative: h_rel,
        connection_products: conn,
    })
}

pub fn surface_report(
    alpha_spec: &CurveSpec,
    gamma_spec: &CurveSpec,
    grid: GridSpec,
    surface: &SurfaceGrid,
    tolerance: f64,
    with_oracle: bool,
) -> Result<SurfaceReport> {
    let (alpha, gamma) = (surface.alpha(), surface.gamma());
    let d = surface.defects();
    let analytic = AnalyticResiduals {
        alpha_curve: alpha.max_defects().max(),
        gamma_curve: gamma.max_defects().max(),
        conformality: d.conformality,
        lagrangian: d.lagrangian,
        alpha_modulus: d.alpha_modulus,
        additive_angle: additive_angle_residual(surface)?,
    };
    let report = classify(surface);
    let oracle = if with_oracle { Some(oracle_residuals(surface)?) } else { None };
    Ok(SurfaceReport {
        alpha: alpha_spec.clone(),
        gamma: gamma_spec.clone(),
        grid,
        tolerance,
        classification: (&report).into(),
        willmore: WillmoreJson {
            split: report.willmore.split,
            double_integral: report.willmore.double_integral,
            relative_gap: report.willmore.relative_gap(),
        },
        pass: analytic.max() < tolerance,
        analytic,
        oracle,
    })
}
