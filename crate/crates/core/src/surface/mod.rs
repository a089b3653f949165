//! The Lagrangian immersion `φ(t, s) = (α₁(t)γ₁(s), α₂(t)γ₂(s))` and its
//! analytic geometry: conformal factor, Lagrangian angle, mean curvature,
//! the cubic form `C` and the Levi-Civita products of the coordinate frame.
//!
//! Rows of every field are indexed by the `H³₁` parameter `t`, columns by the
//! `S³` parameter `s`.

mod classify;

use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

pub use classify::{
    classify, sphere_radius, willmore_functional, ClassificationReport, CmcFit, HmFit, Label, Verdicts,
    WillmoreValue,
};

use crate::curve::LegendreCurve;
use crate::error::{Error, Invariant, Result};
use crate::geometry::{inner_c, inner_with_rotated, AmbientQuadric, Complex, ComplexPair};
use crate::numeric::{unwrap_angles, wrap_angle};
use crate::{DRIFT_FACTOR, EPS_ODE};

/// `|γ₁|` below this makes the quotient formula for `e^{iβ}` unusable.
pub const ANGLE_POLE_TOL: f64 = 1e-8;

/// Dense row-major field over the `(t, s)` grid.
#[derive(Clone, Debug, PartialEq)]
pub struct Grid<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Copy> Grid<T> {
    pub fn from_fn<F: FnMut(usize, usize) -> T>(rows: usize, cols: usize, mut f: F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Grid { rows, cols, data }
    }

    pub fn try_from_fn<F: FnMut(usize, usize) -> Result<T>>(rows: usize, cols: usize, mut f: F) -> Result<Self> {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j)?);
            }
        }
        Ok(Grid { rows, cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn data(&self) -> &[T] {
        &self.data
    }

    pub fn map<U: Copy, F: FnMut(T) -> U>(&self, f: F) -> Grid<U> {
        Grid { rows: self.rows, cols: self.cols, data: self.data.iter().copied().map(f).collect() }
    }

    /// Largest `f(value)` over the grid.
    pub fn sup<F: FnMut(T) -> f64>(&self, mut f: F) -> f64 {
        self.data.iter().fold(0.0, |m, &v| {
            let x = f(v);
            if x > m || x.is_nan() {
                x
            } else {
                m
            }
        })
    }
}

/// The four independent components of the totally symmetric cubic form.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct CTensor {
    pub ttt: f64,
    pub tts: f64,
    pub tss: f64,
    pub sss: f64,
}

/// `⟨∇_a ∂_b, ∂_c⟩` written `ab_c`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct ConnectionProducts {
    pub tt_t: f64,
    pub tt_s: f64,
    pub ts_t: f64,
    pub ts_s: f64,
    pub ss_t: f64,
    pub ss_s: f64,
}

impl ConnectionProducts {
    /// Largest violation of `tt_s = −ts_t` and `ss_t = −ts_s`.
    pub fn antisymmetry_defect(&self) -> f64 {
        (self.tt_s + self.ts_t).abs().max((self.ss_t + self.ts_s).abs())
    }

    pub fn max_abs_diff(&self, other: &ConnectionProducts) -> f64 {
        [
            self.tt_t - other.tt_t,
            self.tt_s - other.tt_s,
            self.ts_t - other.ts_t,
            self.ts_s - other.ts_s,
            self.ss_t - other.ss_t,
            self.ss_s - other.ss_s,
        ]
        .iter()
        .fold(0.0, |m, d| m.max(d.abs()))
    }
}

/// Worst pointwise violations of the immersion invariants.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct SurfaceDefects {
    /// `max(||φ_t|² − e^{2u}|, ||φ_s|² − e^{2u}|, |⟨φ_t, φ_s⟩|)`
    pub conformality: f64,
    /// `|ω(φ_t, φ_s)|`
    pub lagrangian: f64,
    /// `||α₁|² − |α₂'|²|`
    pub alpha_modulus: f64,
}

/// The sampled immersion together with the two curves it was built from.
#[derive(Clone, Debug)]
pub struct SurfaceGrid {
    alpha: LegendreCurve,
    gamma: LegendreCurve,
    position: Grid<ComplexPair>,
    d_t: Grid<ComplexPair>,
    d_s: Grid<ComplexPair>,
    conformal_factor: Grid<f64>,
    defects: SurfaceDefects,
}

/// Assemble `φ` on the tensor grid of the two curves and verify that it is a
/// conformal Lagrangian immersion.
pub fn build_surface(alpha: &LegendreCurve, gamma: &LegendreCurve) -> Result<SurfaceGrid> {
    if alpha.ambient() != AmbientQuadric::AntiDeSitter3 {
        return Err(Error::AmbientMismatch { expected: AmbientQuadric::AntiDeSitter3, found: alpha.ambient() });
    }
    if gamma.ambient() != AmbientQuadric::Sphere3 {
        return Err(Error::AmbientMismatch { expected: AmbientQuadric::Sphere3, found: gamma.ambient() });
    }
    let gate = DRIFT_FACTOR * EPS_ODE;
    let mut defects = SurfaceDefects::default();
    for (i, j) in alpha.jets().iter().enumerate() {
        let d = (j.position.z1.norm_sqr() - j.velocity.z2.norm_sqr()).abs();
        if !(d <= gate) {
            return Err(Error::InvariantDrift { invariant: Invariant::AlphaModulus, index: i, param: j.param, residual: d });
        }
        defects.alpha_modulus = defects.alpha_modulus.max(d);
    }

    let (rows, cols) = (alpha.len(), gamma.len());
    let a = alpha.jets();
    let g = gamma.jets();
    let position = Grid::from_fn(rows, cols, |i, j| {
        ComplexPair::new(a[i].position.z1 * g[j].position.z1, a[i].position.z2 * g[j].position.z2)
    });
    let d_t = Grid::from_fn(rows, cols, |i, j| {
        ComplexPair::new(a[i].velocity.z1 * g[j].position.z1, a[i].velocity.z2 * g[j].position.z2)
    });
    let d_s = Grid::from_fn(rows, cols, |i, j| {
        ComplexPair::new(a[i].position.z1 * g[j].velocity.z1, a[i].position.z2 * g[j].velocity.z2)
    });
    let conformal_factor =
        Grid::from_fn(rows, cols, |i, j| g[j].position.z1.norm_sqr() + a[i].position.z1.norm_sqr());

    for (i, ai) in a.iter().enumerate() {
        for j in 0..cols {
            let (pt, ps, e2u) = (d_t.get(i, j), d_s.get(i, j), conformal_factor.get(i, j));
            if !(e2u > 0.0) {
                return Err(Error::Degenerate { what: "conformal factor" });
            }
            let h = pt.hermitian(ps);
            let conf = (pt.norm_sqr() - e2u).abs().max((ps.norm_sqr() - e2u).abs()).max(h.re.abs());
            let lag = h.im.abs();
            if !(conf <= gate) {
                return Err(Error::InvariantDrift {
                    invariant: Invariant::Conformality,
                    index: i * cols + j,
                    param: ai.param,
                    residual: conf,
                });
            }
            if !(lag <= gate) {
                return Err(Error::InvariantDrift {
                    invariant: Invariant::Lagrangian,
                    index: i * cols + j,
                    param: ai.param,
                    residual: lag,
                });
            }
            defects.conformality = defects.conformality.max(conf);
            defects.lagrangian = defects.lagrangian.max(lag);
        }
    }

    Ok(SurfaceGrid {
        alpha: alpha.clone(),
        gamma: gamma.clone(),
        position,
        d_t,
        d_s,
        conformal_factor,
        defects,
    })
}

impl SurfaceGrid {
    pub fn alpha(&self) -> &LegendreCurve {
        &self.alpha
    }

    pub fn gamma(&self) -> &LegendreCurve {
        &self.gamma
    }

    pub fn rows(&self) -> usize {
        self.position.rows()
    }

    pub fn cols(&self) -> usize {
        self.position.cols()
    }

    pub fn t_grid(&self) -> Vec<f64> {
        self.alpha.params()
    }

    pub fn s_grid(&self) -> Vec<f64> {
        self.gamma.params()
    }

    pub fn position(&self) -> &Grid<ComplexPair> {
        &self.position
    }

    pub fn d_t(&self) -> &Grid<ComplexPair> {
        &self.d_t
    }

    pub fn d_s(&self) -> &Grid<ComplexPair> {
        &self.d_s
    }

    /// `e^{2u} = |γ₁|² + |α₁|²`.
    pub fn conformal_factor(&self) -> &Grid<f64> {
        &self.conformal_factor
    }

    pub fn conformal_exponent(&self) -> Grid<f64> {
        self.conformal_factor.map(|e| 0.5 * e.ln())
    }

    pub fn defects(&self) -> SurfaceDefects {
        self.defects
    }

    /// `e^{iβ} = α₁'γ₂' / (ᾱ₂γ̄₁)`, unwrapped along the first column and then
    /// along each row. A second unwrap (first row, then last column) must
    /// reach the same value at the far corner.
    pub fn lagrangian_angle(&self) -> Result<Grid<f64>> {
        let (rows, cols) = (self.rows(), self.cols());
        let a = self.alpha.jets();
        let g = self.gamma.jets();
        let gate = DRIFT_FACTOR * EPS_ODE;
        let raw = Grid::try_from_fn(rows, cols, |i, j| {
            let g1 = g[j].position.z1;
            if g1.norm() < ANGLE_POLE_TOL {
                return Err(Error::AnglePole { t_index: i, s_index: j, t: a[i].param, s: g[j].param });
            }
            let e = a[i].velocity.z1 * g[j].velocity.z2 / (a[i].position.z2.conj() * g1.conj());
            let defect = (e.norm() - 1.0).abs();
            if !(defect <= gate) {
                return Err(Error::InvariantDrift {
                    invariant: Invariant::DeterminantModulus,
                    index: i * cols + j,
                    param: a[i].param,
                    residual: defect,
                });
            }
            Ok(e.arg())
        })?;

        unwrap_grid(&raw, gate)
    }

    /// `H = e^{−2u}/2 (k_α Jφ_t + k_γ Jφ_s)`.
    pub fn mean_curvature(&self) -> Grid<ComplexPair> {
        let ka = self.alpha.curvature();
        let kg = self.gamma.curvature();
        Grid::from_fn(self.rows(), self.cols(), |i, j| {
            let scale = 0.5 / self.conformal_factor.get(i, j);
            (self.d_t.get(i, j) * ka[i] + self.d_s.get(i, j) * kg[j]).mul_i() * scale
        })
    }

    /// `|H| = e^{−u}/2 √(k_α² + k_γ²)`.
    pub fn mean_curvature_norm(&self) -> Grid<f64> {
        let ka = self.alpha.curvature();
        let kg = self.gamma.curvature();
        Grid::from_fn(self.rows(), self.cols(), |i, j| {
            0.5 * (ka[i] * ka[i] + kg[j] * kg[j]).sqrt() / self.conformal_factor.get(i, j).sqrt()
        })
    }

    /// Cubic form `C(x, y, z) = ⟨h(x, y), Jz⟩` in the coordinate frame, with
    /// second derivatives of the curves taken from their ODEs.
    pub fn c_tensor(&self) -> Grid<CTensor> {
        let a = self.alpha.jets();
        let g = self.gamma.jets();
        let aa: Vec<ComplexPair> = (0..a.len()).map(|i| self.alpha.acceleration(i)).collect();
        let ga: Vec<ComplexPair> = (0..g.len()).map(|j| self.gamma.acceleration(j)).collect();
        Grid::from_fn(self.rows(), self.cols(), |i, j| {
            let (ap, av) = (a[i].position, a[i].velocity);
            let (gp, gv) = (g[j].position, g[j].velocity);
            CTensor {
                ttt: inner_with_rotated(aa[i].z1, av.z1) * gp.z1.norm_sqr()
                    + inner_with_rotated(aa[i].z2, av.z2) * gp.z2.norm_sqr(),
                tts: inner_with_rotated(gv.z1, gp.z1),
                tss: inner_with_rotated(av.z1, ap.z1),
                sss: ap.z1.norm_sqr() * inner_with_rotated(ga[j].z1, gv.z1)
                    + ap.z2.norm_sqr() * inner_with_rotated(ga[j].z2, gv.z2),
            }
        })
    }

    /// The six products `⟨∇_a ∂_b, ∂_c⟩`, with second derivatives from the ODEs.
    pub fn connection_products(&self) -> Grid<ConnectionProducts> {
        let a = self.alpha.jets();
        let g = self.gamma.jets();
        let aa: Vec<ComplexPair> = (0..a.len()).map(|i| self.alpha.acceleration(i)).collect();
        let ga: Vec<ComplexPair> = (0..g.len()).map(|j| self.gamma.acceleration(j)).collect();
        Grid::from_fn(self.rows(), self.cols(), |i, j| {
            let (ap, av) = (a[i].position, a[i].velocity);
            let (gp, gv) = (g[j].position, g[j].velocity);
            let half_es = inner_c(gv.z1, gp.z1);
            let half_et = inner_c(av.z1, ap.z1);
            ConnectionProducts {
                tt_t: inner_c(aa[i].z1, av.z1) * gp.z1.norm_sqr() + inner_c(aa[i].z2, av.z2) * gp.z2.norm_sqr(),
                tt_s: -half_es,
                ts_t: half_es,
                ts_s: half_et,
                ss_t: -half_et,
                ss_s: ap.z1.norm_sqr() * inner_c(ga[j].z1, gv.z1) + ap.z2.norm_sqr() * inner_c(ga[j].z2, gv.z2),
            }
        })
    }

    /// `(u_t, u_s)` with `u = ½ ln(|γ₁|² + |α₁|²)`.
    pub fn conformal_gradient(&self) -> Grid<(f64, f64)> {
        let a = self.alpha.jets();
        let g = self.gamma.jets();
        Grid::from_fn(self.rows(), self.cols(), |i, j| {
            let e2u = self.conformal_factor.get(i, j);
            (inner_c(a[i].velocity.z1, a[i].position.z1) / e2u, inner_c(g[j].velocity.z1, g[j].position.z1) / e2u)
        })
    }

    /// The three expressions `k_α' − u_t k_α + u_s k_γ`, `u_t k_γ + u_s k_α`,
    /// `k_γ' − u_s k_γ + u_t k_α` whose vanishing is parallel mean curvature.
    /// Curvature derivatives come from the curvature samples by differences.
    pub fn parallel_h_residuals(&self) -> Grid<[f64; 3]> {
        let ka = self.alpha.curvature();
        let kg = self.gamma.curvature();
        let dka = crate::numeric::derivative(ka, self.alpha.step());
        let dkg = crate::numeric::derivative(kg, self.gamma.step());
        let grad = self.conformal_gradient();
        Grid::from_fn(self.rows(), self.cols(), |i, j| {
            let (ut, us) = grad.get(i, j);
            [dka[i] - ut * ka[i] + us * kg[j], ut * kg[j] + us * ka[i], dkg[j] - us * kg[j] + ut * ka[i]]
        })
    }

    /// `|φ|` at every grid point.
    pub fn radius(&self) -> Grid<f64> {
        self.position.map(|p| p.norm())
    }

    /// The oriented unit normal frame phase `e^{iβ}` for cross-checks with the
    /// complex determinant of the normalized coordinate frame.
    pub fn frame_determinant(&self, i: usize, j: usize) -> Complex {
        let e = self.conformal_factor.get(i, j);
        self.d_t.get(i, j).det(self.d_s.get(i, j)) / e
    }
}

/// Unwrap a field of raw angles along the first column and then along each
/// row, checking the far corner against the first-row, last-column path.
pub(crate) fn unwrap_grid(raw: &Grid<f64>, gate: f64) -> Result<Grid<f64>> {
    let (rows, cols) = (raw.rows(), raw.cols());
    let first_col: Vec<f64> = (0..rows).map(|i| raw.get(i, 0)).collect();
    let first_col = unwrap_angles(&first_col);
    let mut data = Vec::with_capacity(rows * cols);
    for (i, &start) in first_col.iter().enumerate() {
        let mut row = raw.row(i).to_vec();
        row[0] = start;
        let mut prev_raw = raw.get(i, 0);
        for j in 1..cols {
            let r = row[j];
            row[j] = row[j - 1] + wrap_angle(r - prev_raw);
            prev_raw = r;
        }
        data.extend_from_slice(&row);
    }
    let beta = Grid { rows, cols, data };

    let first_row = unwrap_angles(raw.row(0));
    let mut corner = first_row[cols - 1];
    for i in 1..rows {
        corner += wrap_angle(raw.get(i, cols - 1) - raw.get(i - 1, cols - 1));
    }
    let mismatch = (corner - beta.get(rows - 1, cols - 1)).abs();
    if !(mismatch <= gate) {
        return Err(Error::Holonomy { mismatch });
    }
    Ok(beta)
}
