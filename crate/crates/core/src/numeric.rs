//! Quadrature, interpolation, differencing and angle unwrapping on uniform grids.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::{PI, TAU};

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{ensure_finite, Error, Result};

/// A uniform grid `start, start + h, …, end` covering a closed interval.
///
/// The requested step is shrunk so that the last sample lands exactly on
/// `end`: the actual spacing is `(end − start) / ceil((end − start) / step)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ParamGrid {
    start: f64,
    end: f64,
    intervals: usize,
}

impl ParamGrid {
    pub fn new(start: f64, end: f64, step: f64) -> Result<Self> {
        ensure_finite(start, "grid start")?;
        ensure_finite(end, "grid end")?;
        ensure_finite(step, "grid step")?;
        if step <= 0.0 {
            return Err(Error::InvalidParameter { name: "step", value: step, expected: "> 0" });
        }
        if end <= start {
            return Err(Error::InvalidParameter { name: "span end", value: end, expected: "> span start" });
        }
        let intervals = ((end - start) / step - 1e-9).ceil().max(1.0) as usize;
        Ok(ParamGrid { start, end, intervals })
    }

    /// Grid with an explicit number of intervals.
    pub fn with_intervals(start: f64, end: f64, intervals: usize) -> Result<Self> {
        ParamGrid::new(start, end, 1.0)?;
        Ok(ParamGrid { start, end, intervals: intervals.max(1) })
    }

    pub fn start(&self) -> f64 {
        self.start
    }

    pub fn end(&self) -> f64 {
        self.end
    }

    pub fn step(&self) -> f64 {
        (self.end - self.start) / self.intervals as f64
    }

    pub fn len(&self) -> usize {
        self.intervals + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn at(&self, i: usize) -> f64 {
        if i == self.intervals {
            self.end
        } else {
            self.start + i as f64 * self.step()
        }
    }

    pub fn samples(&self) -> Vec<f64> {
        (0..self.len()).map(|i| self.at(i)).collect()
    }
}

/// Composite quadrature weights for `n` samples with spacing `h`.
///
/// Simpson's rule when the number of intervals is even; otherwise Simpson on
/// all but the last three intervals and the 3/8 rule on those. Two samples
/// fall back to the trapezoid rule.
pub fn simpson_weights(n: usize, h: f64) -> Vec<f64> {
    let mut w = vec![0.0; n];
    match n {
        0 | 1 => {}
        2 => {
            w[0] = 0.5 * h;
            w[1] = 0.5 * h;
        }
        _ => {
            let intervals = n - 1;
            let simpson_end = if intervals % 2 == 0 { intervals } else { intervals - 3 };
            let mut i = 0;
            while i < simpson_end {
                w[i] += h / 3.0;
                w[i + 1] += 4.0 * h / 3.0;
                w[i + 2] += h / 3.0;
                i += 2;
            }
            if simpson_end < intervals {
                let j = simpson_end;
                w[j] += 3.0 * h / 8.0;
                w[j + 1] += 9.0 * h / 8.0;
                w[j + 2] += 9.0 * h / 8.0;
                w[j + 3] += 3.0 * h / 8.0;
            }
        }
    }
    w
}

pub fn simpson(values: &[f64], h: f64) -> f64 {
    simpson_weights(values.len(), h).iter().zip(values).map(|(w, v)| w * v).sum()
}

/// Running integral `∫_{x₀}^{x_i} f` at every sample.
///
/// Even samples get the composite Simpson sum; odd samples add the
/// three-point partial-interval rule `h/12 (5f₀ + 8f₁ − f₂)` to the preceding
/// even sample.
pub fn cumulative_simpson(values: &[f64], h: f64) -> Vec<f64> {
    let n = values.len();
    let mut out = vec![0.0; n];
    if n < 2 {
        return out;
    }
    if n == 2 {
        out[1] = 0.5 * h * (values[0] + values[1]);
        return out;
    }
    let mut i = 0;
    while i + 2 < n {
        let (f0, f1, f2) = (values[i], values[i + 1], values[i + 2]);
        out[i + 1] = out[i] + h / 12.0 * (5.0 * f0 + 8.0 * f1 - f2);
        out[i + 2] = out[i] + h / 3.0 * (f0 + 4.0 * f1 + f2);
        i += 2;
    }
    if i + 1 < n {
        // trailing odd sample: integrate backwards from the last full panel
        let (f0, f1, f2) = (values[i - 1], values[i], values[i + 1]);
        out[i + 1] = out[i] + h / 12.0 * (-f0 + 8.0 * f1 + 5.0 * f2);
    }
    out
}

/// Derivative samples by second-order centered differences, with
/// second-order one-sided differences at the two ends.
pub fn centered_derivative(values: &[f64], h: f64) -> Vec<f64> {
    let n = values.len();
    let mut d = vec![0.0; n];
    if n < 2 {
        return d;
    }
    if n == 2 {
        let slope = (values[1] - values[0]) / h;
        return vec![slope, slope];
    }
    for i in 1..n - 1 {
        d[i] = (values[i + 1] - values[i - 1]) / (2.0 * h);
    }
    d[0] = (-3.0 * values[0] + 4.0 * values[1] - values[2]) / (2.0 * h);
    d[n - 1] = (3.0 * values[n - 1] - 4.0 * values[n - 2] + values[n - 3]) / (2.0 * h);
    d
}

/// First and second derivatives by five-point fourth-order stencils, shifted
/// one-sided near the ends. Needs at least six samples.
pub fn fourth_order_derivatives(values: &[f64], h: f64) -> Result<(Vec<f64>, Vec<f64>)> {
    let n = values.len();
    if n < 6 {
        return Err(Error::ShapeMismatch { expected: 6, found: n });
    }
    let f = values;
    let mut d1 = vec![0.0; n];
    let mut d2 = vec![0.0; n];
    for i in 2..n - 2 {
        d1[i] = (-f[i + 2] + 8.0 * f[i + 1] - 8.0 * f[i - 1] + f[i - 2]) / (12.0 * h);
        d2[i] = (-f[i + 2] + 16.0 * f[i + 1] - 30.0 * f[i] + 16.0 * f[i - 1] - f[i - 2]) / (12.0 * h * h);
    }
    let first0 = |g: &dyn Fn(usize) -> f64| (-25.0 * g(0) + 48.0 * g(1) - 36.0 * g(2) + 16.0 * g(3) - 3.0 * g(4)) / (12.0 * h);
    let first1 = |g: &dyn Fn(usize) -> f64| (-3.0 * g(0) - 10.0 * g(1) + 18.0 * g(2) - 6.0 * g(3) + g(4)) / (12.0 * h);
    let second0 = |g: &dyn Fn(usize) -> f64| {
        (45.0 * g(0) - 154.0 * g(1) + 214.0 * g(2) - 156.0 * g(3) + 61.0 * g(4) - 10.0 * g(5)) / (12.0 * h * h)
    };
    let second1 = |g: &dyn Fn(usize) -> f64| {
        (10.0 * g(0) - 15.0 * g(1) - 4.0 * g(2) + 14.0 * g(3) - 6.0 * g(4) + g(5)) / (12.0 * h * h)
    };
    let fwd = |j: usize| f[j];
    let bwd = |j: usize| f[n - 1 - j];
    d1[0] = first0(&fwd);
    d1[1] = first1(&fwd);
    d1[n - 1] = -first0(&bwd);
    d1[n - 2] = -first1(&bwd);
    d2[0] = second0(&fwd);
    d2[1] = second1(&fwd);
    d2[n - 1] = second0(&bwd);
    d2[n - 2] = second1(&bwd);
    Ok((d1, d2))
}

/// Derivative samples by [`fourth_order_derivatives`], falling back to
/// [`centered_derivative`] below six samples.
pub fn derivative(values: &[f64], h: f64) -> Vec<f64> {
    match fourth_order_derivatives(values, h) {
        Ok((d1, _)) => d1,
        Err(_) => centered_derivative(values, h),
    }
}

/// Wrap an angle difference into `(−π, π]`.
pub fn wrap_angle(d: f64) -> f64 {
    let mut r = d % TAU;
    if r > PI {
        r -= TAU;
    } else if r <= -PI {
        r += TAU;
    }
    r
}

/// Continuous branch of a sequence of angles; consecutive outputs differ by
/// less than π.
pub fn unwrap_angles(raw: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(raw.len());
    let mut prev: Option<(f64, f64)> = None;
    for &a in raw {
        let next = match prev {
            None => a,
            Some((raw_prev, unwrapped_prev)) => unwrapped_prev + wrap_angle(a - raw_prev),
        };
        out.push(next);
        prev = Some((a, next));
    }
    out
}

/// Natural cubic spline through `(x_i, y_i)` on a strictly increasing grid.
#[derive(Clone, Debug, PartialEq)]
pub struct NaturalSpline {
    x: Vec<f64>,
    y: Vec<f64>,
    // second derivatives at the knots
    m: Vec<f64>,
}

impl NaturalSpline {
    pub fn new(x: Vec<f64>, y: Vec<f64>) -> Result<Self> {
        if x.len() != y.len() {
            return Err(Error::ShapeMismatch { expected: x.len(), found: y.len() });
        }
        if x.len() < 2 {
            return Err(Error::ShapeMismatch { expected: 2, found: x.len() });
        }
        for (i, (&xi, &yi)) in x.iter().zip(&y).enumerate() {
            ensure_finite(xi, "spline knot")?;
            ensure_finite(yi, "spline value")?;
            if i > 0 && xi <= x[i - 1] {
                return Err(Error::Domain { what: "non-increasing spline knot", index: i, param: xi, value: x[i - 1] });
            }
        }
        let n = x.len();
        let mut m = vec![0.0; n];
        if n > 2 {
            // Thomas algorithm on the interior tridiagonal system
            let mut diag = vec![0.0; n];
            let mut rhs = vec![0.0; n];
            let mut upper = vec![0.0; n];
            for i in 1..n - 1 {
                let h0 = x[i] - x[i - 1];
                let h1 = x[i + 1] - x[i];
                diag[i] = 2.0 * (h0 + h1);
                upper[i] = h1;
                rhs[i] = 6.0 * ((y[i + 1] - y[i]) / h1 - (y[i] - y[i - 1]) / h0);
                if i > 1 {
                    let lower = h0;
                    let factor = lower / diag[i - 1];
                    diag[i] -= factor * upper[i - 1];
                    rhs[i] -= factor * rhs[i - 1];
                }
            }
            for i in (1..n - 1).rev() {
                let next = if i + 1 < n - 1 { m[i + 1] } else { 0.0 };
                m[i] = (rhs[i] - upper[i] * next) / diag[i];
            }
        }
        Ok(NaturalSpline { x, y, m })
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.x[0], self.x[self.x.len() - 1])
    }

    pub fn knots(&self) -> &[f64] {
        &self.x
    }

    pub fn values(&self) -> &[f64] {
        &self.y
    }

    fn segment(&self, t: f64) -> usize {
        let n = self.x.len();
        match self.x.binary_search_by(|probe| probe.partial_cmp(&t).unwrap_or(core::cmp::Ordering::Less)) {
            Ok(i) => i.min(n - 2),
            Err(0) => 0,
            Err(i) => (i - 1).min(n - 2),
        }
    }

    /// Value, first and second derivative at `t`. Linear extrapolation outside the knots.
    pub fn eval_all(&self, t: f64) -> (f64, f64, f64) {
        let i = self.segment(t);
        let (x0, x1) = (self.x[i], self.x[i + 1]);
        let (y0, y1) = (self.y[i], self.y[i + 1]);
        let (m0, m1) = (self.m[i], self.m[i + 1]);
        let h = x1 - x0;
        let a = (x1 - t) / h;
        let b = (t - x0) / h;
        let value = a * y0 + b * y1 + ((a * a * a - a) * m0 + (b * b * b - b) * m1) * h * h / 6.0;
        let slope = (y1 - y0) / h + ((1.0 - 3.0 * a * a) * m0 + (3.0 * b * b - 1.0) * m1) * h / 6.0;
        let curv = a * m0 + b * m1;
        (value, slope, curv)
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.eval_all(t).0
    }
}
