//! Seeded self-check of every module: random curve pairs, the surfaces they
//! generate, their Hopf projections and the elliptic functions.

use lagsurf_core::curve::{
    geodesic_curvature, hopf_project, hopf_velocity, horizontal_lift, integrate_legendre, CurvatureProfile,
    HyperbolicIC, LegendreCurve, SphereIC,
};
use lagsurf_core::elliptic::{complete_elliptic_k, jacobi_cn_sn_dn, EllipticModulus};
use lagsurf_core::geometry::inner_with_rotated;
use lagsurf_core::numeric::ParamGrid;
use lagsurf_core::oracle::{fd_first_fundamental, fd_lagrangian_defect, StencilConfig, StencilOrder};
use lagsurf_core::surface::{build_surface, classify, willmore_functional, Grid, SurfaceGrid};
use lagsurf_core::{AmbientQuadric, Complex, ComplexPair, Result, EPS_ALG, EPS_ODE};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::report::{additive_angle_residual, oracle_residuals};

/// Integration step of the random curves.
pub const STEP: f64 = 1e-3;
/// Surfaces use every `STRIDE`-th curve sample, so the oracle spacing is `STRIDE * STEP`.
pub const STRIDE: usize = 10;
/// Second-order oracle constant: gaps stay below `ORACLE_C h² + 10 EPS_ODE`.
pub const ORACLE_C: f64 = 25.0;
/// Size of the perturbations in the negative controls.
pub const PERTURBATION: f64 = 1e-2;

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub worst: f64,
    pub tolerance: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Control {
    pub name: &'static str,
    pub defect: f64,
    pub threshold: f64,
    pub detected: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub draws: usize,
    pub tolerance_override: Option<f64>,
    pub checks: Vec<Check>,
    pub negative_controls: Vec<Control>,
    pub pass: bool,
}

fn oracle_tolerance() -> f64 {
    let h = STRIDE as f64 * STEP;
    ORACLE_C * h * h + 10.0 * EPS_ODE
}

/// Default gates, in report order.
pub fn default_tolerances() -> Vec<(&'static str, f64)> {
    vec![
        ("curve.invariants", EPS_ODE),
        ("curve.angle_rate", EPS_ODE),
        ("surface.immersion", EPS_ODE),
        ("surface.additive_angle", 10.0 * EPS_ODE),
        ("surface.willmore_split", 1e-9),
        ("oracle.first_fundamental", oracle_tolerance()),
        ("oracle.lagrangian", oracle_tolerance()),
        ("oracle.mean_curvature_relative", oracle_tolerance()),
        ("oracle.connection_products", oracle_tolerance()),
        ("hopf.quadric", EPS_ALG),
        ("hopf.identities", EPS_ALG),
        ("hopf.curvature", 1e-5),
        ("hopf.lift", 1e-5),
        ("elliptic.identities", 1e-12),
        ("elliptic.quarter_period", 1e-12),
    ]
}

fn profile(rng: &mut ChaCha8Rng) -> CurvatureProfile {
    if rng.gen_bool(0.5) {
        CurvatureProfile::Constant(rng.gen_range(-3.0..3.0))
    } else {
        CurvatureProfile::Linear { slope: rng.gen_range(-2.0..2.0), intercept: rng.gen_range(-2.0..2.0) }
    }
}

/// Curve pairs on `t ∈ [−0.4, 0.4]`, `s ∈ [0.2, 1]`, the box in which `ORACLE_C` was fitted.
fn draw(rng: &mut ChaCha8Rng) -> Result<(LegendreCurve, LegendreCurve)> {
    let (ka, kg) = (profile(rng), profile(rng));
    let hic = HyperbolicIC::new(rng.gen_range(0.0..1.0), rng.gen_range(-3.0..3.0))?;
    let sic = SphereIC::new(rng.gen_range(0.2..1.3), rng.gen_range(-3.0..3.0))?;
    let alpha = integrate_legendre(AmbientQuadric::AntiDeSitter3, &ka, hic.into(), &ParamGrid::new(-0.4, 0.4, STEP)?)?;
    let gamma = integrate_legendre(AmbientQuadric::Sphere3, &kg, sic.into(), &ParamGrid::new(0.2, 1.0, STEP)?)?;
    Ok((alpha, gamma))
}

struct Worst(Vec<f64>);

impl Worst {
    fn put(&mut self, idx: usize, v: f64) {
        // NaN must fail the gate.
        let w = &mut self.0[idx];
        *w = if v.is_nan() || w.is_nan() { f64::NAN } else { w.max(v) };
    }
}

fn hopf_residuals(c: &LegendreCurve) -> Result<[f64; 4]> {
    let xi = hopf_project(c);
    let level = if c.ambient() == AmbientQuadric::Sphere3 { 0.5 } else { -0.5 };
    let mut ident = 0.0_f64;
    for (j, x) in c.jets().iter().zip(&xi.points) {
        let v = hopf_velocity(j.position, j.velocity, c.ambient());
        ident = ident
            .max((j.position.z1.norm_sqr() - level - x[2]).abs())
            .max((inner_with_rotated(j.velocity.z1, j.position.z1) - (x[0] * v[1] - x[1] * v[0])).abs());
    }
    let kappa = geodesic_curvature(&xi)?
        .iter()
        .zip(c.curvature())
        .fold(0.0_f64, |m, (a, b)| m.max((a - b).abs()));
    let back = hopf_project(&horizontal_lift(&xi, 0.4)?);
    let lift = back
        .points
        .iter()
        .zip(&xi.points)
        .fold(0.0_f64, |m, (a, b)| (0..3).fold(m, |m, k| m.max((a[k] - b[k]).abs())));
    Ok([xi.max_residual(), ident, kappa, lift])
}

fn elliptic_residuals(rng: &mut ChaCha8Rng) -> Result<(f64, f64)> {
    let (mut ident, mut quarter) = (0.0_f64, 0.0_f64);
    for _ in 0..8 {
        let m = EllipticModulus::new(rng.gen_range(0.0..0.99))?;
        let k = m.value();
        let big_k = complete_elliptic_k(m);
        let v = jacobi_cn_sn_dn(big_k, m)?;
        quarter = quarter.max((v.sn - 1.0).abs()).max(v.cn.abs());
        for _ in 0..64 {
            let v = jacobi_cn_sn_dn(rng.gen_range(-8.0..8.0) * big_k, m)?;
            ident = ident
                .max((v.sn * v.sn + v.cn * v.cn - 1.0).abs())
                .max((v.dn * v.dn + k * k * v.sn * v.sn - 1.0).abs());
        }
    }
    Ok((ident, quarter))
}

fn perturbed(surface: &SurfaceGrid, f: impl Fn(f64, f64) -> ComplexPair) -> Grid<ComplexPair> {
    let (t, s) = (surface.t_grid(), surface.s_grid());
    let pos = surface.position();
    Grid::from_fn(surface.rows(), surface.cols(), |i, j| pos.get(i, j) + f(t[i], s[j]))
}

fn controls(surface: &SurfaceGrid) -> Result<Vec<Control>> {
    let cfg = StencilConfig::for_surface(surface, StencilOrder::Second)?;
    let eps = PERTURBATION;
    let threshold = 0.1 * eps;

    let lag = perturbed(surface, |t, s| ComplexPair::new(Complex::new(0.0, 0.0), Complex::new(0.0, eps * t * s)));
    let lag = fd_lagrangian_defect(&lag, &cfg)?.sup(f64::abs);

    let conf = perturbed(surface, |t, _| ComplexPair::new(Complex::new(eps * t, 0.0), Complex::new(0.0, 0.0)));
    let conf = fd_first_fundamental(&conf, &cfg)?.sup(|f| f.conformal_defect());

    let a = 0.7;
    let linear = |slope_gamma: f64| -> Result<bool> {
        let alpha = integrate_legendre(
            AmbientQuadric::AntiDeSitter3,
            &CurvatureProfile::Linear { slope: a, intercept: 0.3 },
            HyperbolicIC::new(0.5, 0.4)?.into(),
            &ParamGrid::new(0.0, 0.3, 2e-3)?,
        )?;
        let gamma = integrate_legendre(
            AmbientQuadric::Sphere3,
            &CurvatureProfile::Linear { slope: slope_gamma, intercept: 1.1 },
            SphereIC::new(0.4, -1.0)?.into(),
            &ParamGrid::new(0.2, 0.5, 2e-3)?,
        )?;
        Ok(classify(&build_surface(&alpha, &gamma)?).verdicts.hamiltonian_minimal)
    };
    let slope_sum = 1.0;
    let hm_rejected = !linear(-a + slope_sum)?;

    Ok(vec![
        Control { name: "lagrangian_perturbation", defect: lag, threshold, detected: lag > threshold },
        Control { name: "conformal_perturbation", defect: conf, threshold, detected: conf > threshold },
        Control {
            name: "hamiltonian_minimal_slope_sum",
            defect: slope_sum,
            threshold: 0.0,
            detected: hm_rejected,
        },
    ])
}

pub fn run(seed: u64, draws: usize, tolerance: Option<f64>, negative_controls: bool) -> Result<VerifyReport> {
    let gates = default_tolerances();
    let mut worst = Worst(vec![0.0; gates.len()]);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut first_surface = None;
    for _ in 0..draws {
        let (alpha, gamma) = draw(&mut rng)?;
        for c in [&alpha, &gamma] {
            worst.put(0, c.max_defects().max());
            worst.put(1, c.angle_rate_defect());
            let [q, id, k, l] = hopf_residuals(c)?;
            worst.put(9, q);
            worst.put(10, id);
            worst.put(11, k);
            worst.put(12, l);
        }
        let surface = build_surface(&alpha.subsample(STRIDE), &gamma.subsample(STRIDE))?;
        let d = surface.defects();
        worst.put(2, d.conformality.max(d.lagrangian).max(d.alpha_modulus));
        worst.put(3, additive_angle_residual(&surface)?);
        worst.put(4, willmore_functional(&alpha, &gamma).relative_gap());
        let o = oracle_residuals(&surface)?;
        worst.put(5, o.first_fundamental);
        worst.put(6, o.lagrangian);
        worst.put(7, o.mean_curvature_relative);
        worst.put(8, o.connection_products);
        first_surface.get_or_insert(surface);
    }
    let (ident, quarter) = elliptic_residuals(&mut rng)?;
    worst.put(13, ident);
    worst.put(14, quarter);

    let checks: Vec<Check> = gates
        .iter()
        .zip(worst.0)
        .map(|(&(name, default), w)| {
            let tol = tolerance.unwrap_or(default);
            Check { name, worst: w, tolerance: tol, pass: w < tol }
        })
        .collect();
    let negative_controls = match (negative_controls, &first_surface) {
        (true, Some(s)) => controls(s)?,
        _ => Vec::new(),
    };
    let pass = checks.iter().all(|c| c.pass) && negative_controls.iter().all(|c| c.detected);
    Ok(VerifyReport { seed, draws, tolerance_override: tolerance, checks, negative_controls, pass })
}
