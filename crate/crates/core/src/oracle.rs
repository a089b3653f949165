//! Finite-difference re-derivation of surface quantities.
//!
//! Every function here reads only a grid of positions `φ(t_i, s_j)` and the
//! two grid steps. Nothing is taken from the generating curves. Results cover
//! interior points only: an [`Interior`] field remembers how many boundary
//! rows and columns it dropped.


use crate::error::{Error, Result};
use crate::geometry::ComplexPair;
use crate::surface::{unwrap_grid, CTensor, ConnectionProducts, Grid, SurfaceGrid};
use crate::{DRIFT_FACTOR, EPS_ODE};

/// Smallest grid the oracle accepts in either direction.
pub const MIN_GRID: usize = 5;

/// Largest relative conformality defect for which a frame is built.
pub const CONFORMAL_GATE: f64 = 1e-2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StencilOrder {
    Second,
    Fourth,
}

impl StencilOrder {
    /// Points dropped on each side.
    pub fn margin(self) -> usize {
        match self {
            StencilOrder::Second => 1,
            StencilOrder::Fourth => 2,
        }
    }

    pub fn accuracy(self) -> u32 {
        match self {
            StencilOrder::Second => 2,
            StencilOrder::Fourth => 4,
        }
    }

    fn first(self) -> &'static [f64] {
        match self {
            StencilOrder::Second => &[-0.5, 0.0, 0.5],
            StencilOrder::Fourth => &[1.0 / 12.0, -2.0 / 3.0, 0.0, 2.0 / 3.0, -1.0 / 12.0],
        }
    }

    fn second(self) -> &'static [f64] {
        match self {
            StencilOrder::Second => &[1.0, -2.0, 1.0],
            StencilOrder::Fourth => &[-1.0 / 12.0, 4.0 / 3.0, -2.5, 4.0 / 3.0, -1.0 / 12.0],
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StencilConfig {
    h_t: f64,
    h_s: f64,
    order: StencilOrder,
}

impl StencilConfig {
    pub fn new(h_t: f64, h_s: f64, order: StencilOrder) -> Result<Self> {
        for (name, h) in [("h_t", h_t), ("h_s", h_s)] {
            if !(h > 0.0 && h.is_finite()) {
                return Err(Error::InvalidParameter { name, value: h, expected: "> 0" });
            }
        }
        Ok(StencilConfig { h_t, h_s, order })
    }

    /// Steps of the surface's tensor grid.
    pub fn for_surface(surface: &SurfaceGrid, order: StencilOrder) -> Result<Self> {
        StencilConfig::new(surface.alpha().step(), surface.gamma().step(), order)
    }

    pub fn h_t(&self) -> f64 {
        self.h_t
    }

    pub fn h_s(&self) -> f64 {
        self.h_s
    }

    pub fn order(&self) -> StencilOrder {
        self.order
    }
}

/// Values at interior points; `values.get(i, j)` belongs to grid point
/// `(i + margin, j + margin)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Interior<T> {
    pub margin: usize,
    pub values: Grid<T>,
}

impl<T: Copy> Interior<T> {
    /// Value at full-grid index `(i, j)`, if it is covered.
    pub fn at(&self, i: usize, j: usize) -> Option<T> {
        let (m, v) = (self.margin, &self.values);
        (i >= m && j >= m && i - m < v.rows() && j - m < v.cols()).then(|| v.get(i - m, j - m))
    }

    pub fn sup<F: FnMut(T) -> f64>(&self, f: F) -> f64 {
        self.values.sup(f)
    }

    /// Largest `f(self, other)` over the points both fields cover.
    pub fn sup_against<U: Copy, F: FnMut(T, U) -> f64>(&self, full: &Grid<U>, mut f: F) -> f64 {
        let mut worst = 0.0_f64;
        for i in 0..self.values.rows() {
            for j in 0..self.values.cols() {
                worst = worst.max(f(self.values.get(i, j), full.get(i + self.margin, j + self.margin)));
            }
        }
        worst
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct FirstFundamental {
    pub e: f64,
    pub f: f64,
    pub g: f64,
}

impl FirstFundamental {
    /// `max(|E − G|, 2|F|) / (E + G)`
    pub fn conformal_defect(&self) -> f64 {
        (self.e - self.g).abs().max(2.0 * self.f.abs()) / (self.e + self.g)
    }

    pub fn conformal_factor(&self) -> f64 {
        0.5 * (self.e + self.g)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AngleAndMeanCurvature {
    /// Unwrapped angle, margin one stencil.
    pub beta: Interior<f64>,
    /// `½ J∇β`, margin two stencils.
    pub mean_curvature: Interior<ComplexPair>,
}

fn check_shape<T: Copy>(grid: &Grid<T>) -> Result<()> {
    if grid.rows() < MIN_GRID || grid.cols() < MIN_GRID {
        return Err(Error::GridTooSmall { rows: grid.rows(), cols: grid.cols(), min: MIN_GRID });
    }
    Ok(())
}

trait Sample: Copy + core::ops::Add<Output = Self> + core::ops::Mul<f64, Output = Self> {
    const ZERO: Self;
}

impl Sample for f64 {
    const ZERO: f64 = 0.0;
}

impl Sample for ComplexPair {
    const ZERO: ComplexPair = ComplexPair::ZERO;
}

/// `Σ w_a w_b f(i + a, j + b) · scale` over the stencil offsets.
fn apply<T: Sample>(f: &Grid<T>, i: usize, j: usize, wt: &[f64], ws: &[f64], scale: f64) -> T {
    let (ct, cs) = (wt.len() / 2, ws.len() / 2);
    let mut acc = T::ZERO;
    for (a, &x) in wt.iter().enumerate() {
        if x == 0.0 {
            continue;
        }
        for (b, &y) in ws.iter().enumerate() {
            if y == 0.0 {
                continue;
            }
            acc = acc + f.get(i + a - ct, j + b - cs) * (x * y);
        }
    }
    acc * scale
}

struct Partials<T> {
    t: Grid<T>,
    s: Grid<T>,
}

fn interior<T: Copy, U: Copy, F: FnMut(usize, usize) -> U>(f: &Grid<T>, m: usize, mut g: F) -> Grid<U> {
    Grid::from_fn(f.rows() - 2 * m, f.cols() - 2 * m, |i, j| g(i + m, j + m))
}

fn first_partials<T: Sample>(f: &Grid<T>, cfg: &StencilConfig) -> Partials<T> {
    let m = cfg.order.margin();
    let d = cfg.order.first();
    Partials {
        t: interior(f, m, |i, j| apply(f, i, j, d, &[1.0], 1.0 / cfg.h_t)),
        s: interior(f, m, |i, j| apply(f, i, j, &[1.0], d, 1.0 / cfg.h_s)),
    }
}

struct Second<T> {
    tt: Grid<T>,
    ts: Grid<T>,
    ss: Grid<T>,
}

fn second_partials<T: Sample>(f: &Grid<T>, cfg: &StencilConfig) -> Second<T> {
    let m = cfg.order.margin();
    let (d1, d2) = (cfg.order.first(), cfg.order.second());
    Second {
        tt: interior(f, m, |i, j| apply(f, i, j, d2, &[1.0], 1.0 / (cfg.h_t * cfg.h_t))),
        ts: interior(f, m, |i, j| apply(f, i, j, d1, d1, 1.0 / (cfg.h_t * cfg.h_s))),
        ss: interior(f, m, |i, j| apply(f, i, j, &[1.0], d2, 1.0 / (cfg.h_s * cfg.h_s))),
    }
}

/// `E = |φ_t|²`, `F = ⟨φ_t, φ_s⟩`, `G = |φ_s|²`.
pub fn fd_first_fundamental(positions: &Grid<ComplexPair>, cfg: &StencilConfig) -> Result<Interior<FirstFundamental>> {
    check_shape(positions)?;
    let p = first_partials(positions, cfg);
    let values = Grid::from_fn(p.t.rows(), p.t.cols(), |i, j| {
        let (a, b) = (p.t.get(i, j), p.s.get(i, j));
        FirstFundamental { e: a.norm_sqr(), f: a.inner(b), g: b.norm_sqr() }
    });
    Ok(Interior { margin: cfg.order.margin(), values })
}

/// `ω(φ_t, φ_s)`.
pub fn fd_lagrangian_defect(positions: &Grid<ComplexPair>, cfg: &StencilConfig) -> Result<Interior<f64>> {
    check_shape(positions)?;
    let p = first_partials(positions, cfg);
    let values = Grid::from_fn(p.t.rows(), p.t.cols(), |i, j| p.t.get(i, j).kahler(p.s.get(i, j)));
    Ok(Interior { margin: cfg.order.margin(), values })
}

/// `e^{iβ} = det_C(e₁, e₂)` for the frame `e₁ = φ_t/|φ_t|`, `e₂ = φ_s/|φ_s|`,
/// unwrapped over the grid, then `H = ½ J∇β = e^{−2u}/2 (β_t Jφ_t + β_s Jφ_s)`.
pub fn fd_lagrangian_angle_and_h(positions: &Grid<ComplexPair>, cfg: &StencilConfig) -> Result<AngleAndMeanCurvature> {
    check_shape(positions)?;
    let m = cfg.order.margin();
    if positions.rows() < MIN_GRID + 2 * m || positions.cols() < MIN_GRID + 2 * m {
        return Err(Error::GridTooSmall { rows: positions.rows(), cols: positions.cols(), min: MIN_GRID + 2 * m });
    }
    let p = first_partials(positions, cfg);
    let mut worst = 0.0_f64;
    let raw = Grid::from_fn(p.t.rows(), p.t.cols(), |i, j| {
        let (a, b) = (p.t.get(i, j), p.s.get(i, j));
        let ff = FirstFundamental { e: a.norm_sqr(), f: a.inner(b), g: b.norm_sqr() };
        worst = worst.max(ff.conformal_defect());
        (a * (1.0 / a.norm())).det(b * (1.0 / b.norm())).arg()
    });
    if !(worst <= CONFORMAL_GATE) {
        return Err(Error::NonConformalFrame { defect: worst });
    }
    let beta = unwrap_grid(&raw, DRIFT_FACTOR * EPS_ODE)?;
    let grad = first_partials(&beta, cfg);
    let mean_curvature = Grid::from_fn(grad.t.rows(), grad.t.cols(), |i, j| {
        let (a, b) = (p.t.get(i + m, j + m), p.s.get(i + m, j + m));
        let e2u = 0.5 * (a.norm_sqr() + b.norm_sqr());
        (a * grad.t.get(i, j) + b * grad.s.get(i, j)).mul_i() * (0.5 / e2u)
    });
    Ok(AngleAndMeanCurvature {
        beta: Interior { margin: m, values: beta },
        mean_curvature: Interior { margin: 2 * m, values: mean_curvature },
    })
}

/// The six products `⟨φ_ab, φ_c⟩`.
pub fn fd_connection_products(positions: &Grid<ComplexPair>, cfg: &StencilConfig) -> Result<Interior<ConnectionProducts>> {
    check_shape(positions)?;
    let p = first_partials(positions, cfg);
    let d = second_partials(positions, cfg);
    let values = Grid::from_fn(p.t.rows(), p.t.cols(), |i, j| {
        let (t, s) = (p.t.get(i, j), p.s.get(i, j));
        let (tt, ts, ss) = (d.tt.get(i, j), d.ts.get(i, j), d.ss.get(i, j));
        ConnectionProducts {
            tt_t: tt.inner(t),
            tt_s: tt.inner(s),
            ts_t: ts.inner(t),
            ts_s: ts.inner(s),
            ss_t: ss.inner(t),
            ss_s: ss.inner(s),
        }
    });
    Ok(Interior { margin: cfg.order.margin(), values })
}

/// `C(a, b, c) = ⟨φ_ab, Jφ_c⟩`.
pub fn fd_c_tensor(positions: &Grid<ComplexPair>, cfg: &StencilConfig) -> Result<Interior<CTensor>> {
    check_shape(positions)?;
    let p = first_partials(positions, cfg);
    let d = second_partials(positions, cfg);
    let values = Grid::from_fn(p.t.rows(), p.t.cols(), |i, j| {
        let (jt, js) = (p.t.get(i, j).mul_i(), p.s.get(i, j).mul_i());
        CTensor {
            ttt: d.tt.get(i, j).inner(jt),
            tts: d.tt.get(i, j).inner(js),
            tss: d.ts.get(i, j).inner(js),
            sss: d.ss.get(i, j).inner(js),
        }
    });
    Ok(Interior { margin: cfg.order.margin(), values })
}

/// `β_tt + β_ss` of an unwrapped angle field.
pub fn fd_flat_laplacian(beta: &Grid<f64>, cfg: &StencilConfig) -> Result<Interior<f64>> {
    check_shape(beta)?;
    let d = second_partials(beta, cfg);
    let values = Grid::from_fn(d.tt.rows(), d.tt.cols(), |i, j| d.tt.get(i, j) + d.ss.get(i, j));
    Ok(Interior { margin: cfg.order.margin(), values })
}

/// `e^{−2u}(β_tt + β_ss)` with `β` and `e^{2u}` sampled on the same grid.
pub fn fd_harmonicity(beta: &Grid<f64>, e2u: &Grid<f64>, cfg: &StencilConfig) -> Result<Interior<f64>> {
    if beta.rows() != e2u.rows() || beta.cols() != e2u.cols() {
        return Err(Error::ShapeMismatch { expected: beta.rows() * beta.cols(), found: e2u.rows() * e2u.cols() });
    }
    let mut lap = fd_flat_laplacian(beta, cfg)?;
    let m = lap.margin;
    lap.values = Grid::from_fn(lap.values.rows(), lap.values.cols(), |i, j| {
        lap.values.get(i, j) / e2u.get(i + m, j + m)
    });
    Ok(lap)
}

/// Conformal factor estimated from the stencil metric, same layout as
/// [`fd_first_fundamental`].
pub fn fd_conformal_factor(positions: &Grid<ComplexPair>, cfg: &StencilConfig) -> Result<Interior<f64>> {
    let ff = fd_first_fundamental(positions, cfg)?;
    Ok(Interior { margin: ff.margin, values: ff.values.map(|x| x.conformal_factor()) })
}
