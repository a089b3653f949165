//! Jacobi elliptic functions and the complete elliptic integral of the first
//! kind, both via the arithmetic-geometric mean.

use core::f64::consts::FRAC_PI_2;

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{ensure_finite, Error, Result};

/// Modulus of the spherical constant mean curvature profile, `sqrt((5 − √5)/10)`.
pub const SPHERE_MODULUS: f64 = 0.525_731_112_119_133_6;

/// Modulus of the hyperbolic constant mean curvature profile, `sqrt((5 + √5)/10)`.
pub const HYPERBOLIC_MODULUS: f64 = 0.850_650_808_352_039_9;

const AGM_TOL: f64 = 1e-15;
const AGM_MAX_ITER: usize = 32;

/// Elliptic modulus `k` with `0 <= k < 1`.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct EllipticModulus(f64);

impl EllipticModulus {
    pub fn new(k: f64) -> Result<Self> {
        if k.is_finite() && (0.0..1.0).contains(&k) {
            Ok(EllipticModulus(k))
        } else {
            Err(Error::ModulusOutOfRange(k))
        }
    }

    pub fn sphere() -> Self {
        EllipticModulus(SPHERE_MODULUS)
    }

    pub fn hyperbolic() -> Self {
        EllipticModulus(HYPERBOLIC_MODULUS)
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// Complementary modulus `sqrt(1 − k²)`.
    pub fn complement(self) -> f64 {
        (1.0 - self.0 * self.0).sqrt()
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct JacobiValues {
    pub sn: f64,
    pub cn: f64,
    pub dn: f64,
}

/// `sn`, `cn` and `dn` at `x` by the descending Landen transformation.
///
/// The AGM sequence `a, b, c` is run until `c_n <= 1e-15 a_n`, then the
/// amplitude is recovered backwards from `φ_N = 2^N a_N x`.
pub fn jacobi_cn_sn_dn(x: f64, k: EllipticModulus) -> Result<JacobiValues> {
    ensure_finite(x, "elliptic argument")?;
    let m = k.0;
    if m == 0.0 {
        return Ok(JacobiValues { sn: x.sin(), cn: x.cos(), dn: 1.0 });
    }

    let mut a = [0.0_f64; AGM_MAX_ITER + 1];
    let mut c = [0.0_f64; AGM_MAX_ITER + 1];
    a[0] = 1.0;
    c[0] = m;
    let mut b = k.complement();
    let mut n = 0;
    while n < AGM_MAX_ITER {
        let next_a = 0.5 * (a[n] + b);
        let next_c = 0.5 * (a[n] - b);
        b = (a[n] * b).sqrt();
        n += 1;
        a[n] = next_a;
        c[n] = next_c;
        if next_c.abs() <= AGM_TOL * next_a {
            break;
        }
    }

    let mut phi = (1u64 << n) as f64 * a[n] * x;
    for j in (1..=n).rev() {
        phi = 0.5 * (phi + (c[j] / a[j] * phi.sin()).asin());
    }
    let sn = phi.sin();
    let cn = phi.cos();
    let dn = (1.0 - m * m * sn * sn).sqrt();
    Ok(JacobiValues { sn, cn, dn })
}

/// Arithmetic-geometric mean of two positive numbers.
pub fn agm(mut a: f64, mut b: f64) -> f64 {
    for _ in 0..AGM_MAX_ITER {
        if (a - b).abs() <= AGM_TOL * a {
            break;
        }
        let next = 0.5 * (a + b);
        b = (a * b).sqrt();
        a = next;
    }
    0.5 * (a + b)
}

/// Quarter period `K(k) = π / (2 AGM(1, sqrt(1 − k²)))`.
pub fn complete_elliptic_k(k: EllipticModulus) -> f64 {
    if k.0 == 0.0 {
        return FRAC_PI_2;
    }
    FRAC_PI_2 / agm(1.0, k.complement())
}
