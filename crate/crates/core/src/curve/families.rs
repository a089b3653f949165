//! Closed-form Legendre curves.

use alloc::vec::Vec;
use core::f64::consts::FRAC_PI_2;

#[allow(unused_imports)]
use num_traits::Float;

use super::{CurveJet, HyperbolicIC, LegendreCurve, SphereIC};
use crate::elliptic::{jacobi_cn_sn_dn, EllipticModulus};
use crate::error::{Error, Result};
use crate::geometry::{AmbientQuadric, Complex, ComplexPair, I};
use crate::numeric::ParamGrid;
use crate::{DRIFT_FACTOR, EPS_ODE};

/// `5^{1/4}`, the argument scale of the elliptic constant mean curvature curves.
pub const CMC_ARGUMENT_SCALE: f64 = 1.495_348_781_221_220_5;

const RESONANCE_TOL: f64 = 1e-10;

fn assemble<F>(ambient: AmbientQuadric, grid: &ParamGrid, mut f: F) -> Result<LegendreCurve>
where
    F: FnMut(f64) -> Result<(ComplexPair, ComplexPair, f64)>,
{
    let n = grid.len();
    let mut jets = Vec::with_capacity(n);
    let mut curvature = Vec::with_capacity(n);
    for i in 0..n {
        let x = grid.at(i);
        let (position, velocity, k) = f(x)?;
        jets.push(CurveJet { param: x, position, velocity, ambient });
        curvature.push(k);
    }
    LegendreCurve::from_samples(ambient, jets, curvature, DRIFT_FACTOR * EPS_ODE)
}

/// Great circle `γ(s) = cos s γ(0) + sin s γ'(0)` through the canonical jet.
pub fn geodesic_sphere(psi: f64, a: f64, grid: &ParamGrid) -> Result<LegendreCurve> {
    let (p0, v0) = SphereIC::new(psi, a)?.jet();
    assemble(AmbientQuadric::Sphere3, grid, |s| {
        let (sn, cs) = s.sin_cos();
        Ok((p0 * cs + v0 * sn, v0 * cs - p0 * sn, 0.0))
    })
}

/// `α(t) = cosh t α(0) + sinh t α'(0)`.
pub fn geodesic_hyperbolic(delta: f64, b: f64, grid: &ParamGrid) -> Result<LegendreCurve> {
    let (p0, v0) = HyperbolicIC::new(delta, b)?.jet();
    assemble(AmbientQuadric::AntiDeSitter3, grid, |t| {
        let (sh, ch) = (t.sinh(), t.cosh());
        Ok((p0 * ch + v0 * sh, p0 * sh + v0 * ch, 0.0))
    })
}

/// Constant curvature `c` in `S³`: `γ = e^{iλ₁s}A + e^{iλ₂s}B` with
/// `λ₁,₂ = (c ± √(c² + 4))/2`.
pub fn constant_curvature_sphere(c: f64, ic: SphereIC, grid: &ParamGrid) -> Result<LegendreCurve> {
    crate::error::ensure_finite(c, "curvature")?;
    let (p0, v0) = ic.jet();
    let root = (c * c + 4.0).sqrt();
    let (l1, l2) = (0.5 * (c + root), 0.5 * (c - root));
    let a = (v0.scale(-I) - p0 * l2) * (1.0 / (l1 - l2));
    let b = p0 - a;
    assemble(AmbientQuadric::Sphere3, grid, |s| {
        let (e1, e2) = (Complex::cis(l1 * s), Complex::cis(l2 * s));
        let position = a.scale(e1) + b.scale(e2);
        let velocity = a.scale(I * l1 * e1) + b.scale(I * l2 * e2);
        Ok((position, velocity, c))
    })
}

/// The four solution regimes of `α'' − ibα' − α = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HyperbolicBranch {
    /// `|b| > 2`: two purely imaginary rates.
    Oscillatory,
    /// `|b| < 2`: rates with real parts `±√(4 − b²)/2`.
    Hyperbolic,
    /// `b = 2`: double rate `i`, secular factor `t e^{it}`.
    ResonantPlus,
    /// `b = −2`: double rate `−i`, secular factor `t e^{−it}`.
    ResonantMinus,
}

pub fn hyperbolic_branch(b: f64) -> HyperbolicBranch {
    if (b - 2.0).abs() <= RESONANCE_TOL {
        HyperbolicBranch::ResonantPlus
    } else if (b + 2.0).abs() <= RESONANCE_TOL {
        HyperbolicBranch::ResonantMinus
    } else if b.abs() > 2.0 {
        HyperbolicBranch::Oscillatory
    } else {
        HyperbolicBranch::Hyperbolic
    }
}

/// Constant curvature `b0` in `H³₁`, with rates `μ = (ib0 ± √(4 − b0²))/2`.
pub fn constant_curvature_hyperbolic(b0: f64, ic: HyperbolicIC, grid: &ParamGrid) -> Result<LegendreCurve> {
    crate::error::ensure_finite(b0, "curvature")?;
    let (p0, v0) = ic.jet();
    match hyperbolic_branch(b0) {
        HyperbolicBranch::ResonantPlus | HyperbolicBranch::ResonantMinus => {
            let mu = Complex::new(0.0, 0.5 * b0);
            let a = p0;
            let b = v0 - p0.scale(mu);
            assemble(AmbientQuadric::AntiDeSitter3, grid, |t| {
                let e = (mu * t).exp();
                let position = (a + b * t).scale(e);
                let velocity = ((a + b * t).scale(mu) + b).scale(e);
                Ok((position, velocity, b0))
            })
        }
        _ => {
            let root = Complex::new(4.0 - b0 * b0, 0.0).sqrt();
            let m1 = 0.5 * (Complex::new(0.0, b0) + root);
            let m2 = 0.5 * (Complex::new(0.0, b0) - root);
            let a = (v0 - p0.scale(m2)).scale(1.0 / (m1 - m2));
            let b = p0 - a;
            assemble(AmbientQuadric::AntiDeSitter3, grid, |t| {
                let (e1, e2) = ((m1 * t).exp(), (m2 * t).exp());
                let position = a.scale(e1) + b.scale(e2);
                let velocity = a.scale(m1 * e1) + b.scale(m2 * e2);
                Ok((position, velocity, b0))
            })
        }
    }
}

/// `γ(s) = (cos ψ e^{i tan ψ s}, sin ψ e^{−i cot ψ s})`, curvature `tan ψ − cot ψ`.
pub fn horizontal_circle_sphere(psi: f64, grid: &ParamGrid) -> Result<LegendreCurve> {
    if !(psi > 0.0 && psi < FRAC_PI_2) {
        return Err(Error::InvalidParameter { name: "psi", value: psi, expected: "(0, π/2)" });
    }
    let (sp, cp) = psi.sin_cos();
    let (w1, w2) = (sp / cp, -cp / sp);
    let k = w1 + w2;
    assemble(AmbientQuadric::Sphere3, grid, |s| {
        let (e1, e2) = (Complex::cis(w1 * s), Complex::cis(w2 * s));
        let position = ComplexPair::new(e1 * cp, e2 * sp);
        let velocity = ComplexPair::new(I * e1 * sp, -I * e2 * cp);
        Ok((position, velocity, k))
    })
}

/// `α(t) = (sinh δ e^{i coth δ t}, cosh δ e^{i tanh δ t})`, curvature `2 coth 2δ`.
pub fn horizontal_circle_hyperbolic(delta: f64, grid: &ParamGrid) -> Result<LegendreCurve> {
    if !(delta > 0.0 && delta.is_finite()) {
        return Err(Error::InvalidParameter { name: "delta", value: delta, expected: "> 0" });
    }
    let (sh, ch) = (delta.sinh(), delta.cosh());
    let (w1, w2) = (ch / sh, sh / ch);
    let k = w1 + w2;
    assemble(AmbientQuadric::AntiDeSitter3, grid, |t| {
        let (e1, e2) = (Complex::cis(w1 * t), Complex::cis(w2 * t));
        let position = ComplexPair::new(e1 * sh, e2 * ch);
        let velocity = ComplexPair::new(I * e1 * ch, I * e2 * sh);
        Ok((position, velocity, k))
    })
}

struct CmcShape {
    modulus: EllipticModulus,
    amplitude: f64,
    /// `|γ₂|² = 1 + shift · cn²`
    shift: f64,
    /// weight of `sn` in the phase of the second component
    m: f64,
}

fn cmc_jet(shape: &CmcShape, x: f64) -> Result<(ComplexPair, ComplexPair, f64)> {
    let q = CMC_ARGUMENT_SCALE;
    let k = shape.modulus.value();
    let s5 = 5.0_f64.sqrt();
    let v = jacobi_cn_sn_dn(q * x, shape.modulus)?;
    let (sn, cn, dn) = (v.sn, v.cn, v.dn);
    let (dsn, dcn, ddn) = (cn * dn, -sn * dn, -k * k * sn * cn);

    let p = Complex::new(dn, k * sn);
    let dp = Complex::new(ddn, k * dsn);
    let f = (1.0 + shape.shift * cn * cn).sqrt();
    let df = shape.shift * cn * dcn / f;
    let g = Complex::new(s5 * dn, -shape.m * sn);
    let dg = Complex::new(s5 * ddn, -shape.m * dsn);
    let d = 5.0 * dn * dn + shape.m * shape.m * sn * sn;
    let dd = 10.0 * dn * ddn + 2.0 * shape.m * shape.m * sn * dsn;
    let inv_root_d = 1.0 / d.sqrt();

    let z1 = p * shape.amplitude * cn;
    let dz1 = (dp * cn + p * dcn) * shape.amplitude;
    let w = g * f * inv_root_d;
    let dw = (dg * f + g * df - g * f * (0.5 * dd / d)) * inv_root_d;
    let z2 = p * w;
    let dz2 = dp * w + p * dw;

    let position = ComplexPair::new(z1, z2);
    let velocity = ComplexPair::new(dz1, dz2) * q;
    Ok((position, velocity, 3.0 * shape.amplitude * cn))
}

fn sphere_shape() -> CmcShape {
    let s5 = 5.0_f64.sqrt();
    CmcShape {
        modulus: EllipticModulus::sphere(),
        amplitude: (0.5 * (s5 - 1.0)).sqrt(),
        shift: 0.5 * (1.0 - s5),
        m: (5.0 + 2.0 * s5).sqrt(),
    }
}

fn hyperbolic_shape() -> CmcShape {
    let s5 = 5.0_f64.sqrt();
    CmcShape {
        modulus: EllipticModulus::hyperbolic(),
        amplitude: (0.5 * (s5 + 1.0)).sqrt(),
        shift: 0.5 * (1.0 + s5),
        m: (5.0 - 2.0 * s5).sqrt(),
    }
}

/// Position, velocity and curvature of the spherical elliptic CMC generator,
/// `|γ₁| = √((√5 − 1)/2) |cn(5^{1/4}s)|` and `k = 3 √((√5 − 1)/2) cn(5^{1/4}s)`.
pub fn cmc_sphere_jet(s: f64) -> Result<(ComplexPair, ComplexPair, f64)> {
    cmc_jet(&sphere_shape(), s)
}

/// Hyperbolic counterpart of [`cmc_sphere_jet`] with amplitude `√((√5 + 1)/2)`.
pub fn cmc_hyperbolic_jet(t: f64) -> Result<(ComplexPair, ComplexPair, f64)> {
    cmc_jet(&hyperbolic_shape(), t)
}

pub fn cmc_profile_sphere(grid: &ParamGrid) -> Result<LegendreCurve> {
    let shape = sphere_shape();
    assemble(AmbientQuadric::Sphere3, grid, |s| cmc_jet(&shape, s))
}

pub fn cmc_profile_hyperbolic(grid: &ParamGrid) -> Result<LegendreCurve> {
    let shape = hyperbolic_shape();
    assemble(AmbientQuadric::AntiDeSitter3, grid, |t| cmc_jet(&shape, t))
}
