//! C² with its Hermitian product `(z, w) = z₁w̄₁ + z₂w̄₂`.
//!
//! The real part is the Euclidean metric `⟨·,·⟩`, the negative imaginary part
//! is the Kähler form `ω`, and `ω(a, b) = ⟨Ja, b⟩` where `J` is multiplication
//! by `i`.

use core::fmt;
use core::ops::{Add, AddAssign, Mul, Neg, Sub};

use crate::error::{Error, Result};

pub type Complex = num_complex::Complex64;

pub const I: Complex = Complex::new(0.0, 1.0);

/// A point or tangent vector of C².
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct ComplexPair {
    pub z1: Complex,
    pub z2: Complex,
}

impl ComplexPair {
    pub const ZERO: ComplexPair = ComplexPair::new(Complex::new(0.0, 0.0), Complex::new(0.0, 0.0));

    pub const fn new(z1: Complex, z2: Complex) -> Self {
        ComplexPair { z1, z2 }
    }

    pub const fn from_reals(x1: f64, x2: f64) -> Self {
        ComplexPair::new(Complex::new(x1, 0.0), Complex::new(x2, 0.0))
    }

    pub fn hermitian(self, other: ComplexPair) -> Complex {
        self.z1 * other.z1.conj() + self.z2 * other.z2.conj()
    }

    /// Euclidean inner product of C² ≅ R⁴.
    pub fn inner(self, other: ComplexPair) -> f64 {
        self.hermitian(other).re
    }

    pub fn kahler(self, other: ComplexPair) -> f64 {
        -self.hermitian(other).im
    }

    pub fn mul_i(self) -> Self {
        ComplexPair::new(I * self.z1, I * self.z2)
    }

    pub fn scale(self, c: Complex) -> Self {
        ComplexPair::new(c * self.z1, c * self.z2)
    }

    pub fn norm_sqr(self) -> f64 {
        self.z1.norm_sqr() + self.z2.norm_sqr()
    }

    pub fn norm(self) -> f64 {
        num_traits::Float::sqrt(self.norm_sqr())
    }

    /// Complex determinant `det_C(self, other) = z₁w₂ − w₁z₂`.
    pub fn det(self, other: ComplexPair) -> Complex {
        self.z1 * other.z2 - other.z1 * self.z2
    }

    pub fn is_finite(self) -> bool {
        self.z1.is_finite() && self.z2.is_finite()
    }

    pub fn ensure_finite(self, what: &'static str) -> Result<Self> {
        if self.is_finite() {
            Ok(self)
        } else {
            Err(Error::NonFinite { what })
        }
    }
}

impl Add for ComplexPair {
    type Output = ComplexPair;
    fn add(self, rhs: ComplexPair) -> ComplexPair {
        ComplexPair::new(self.z1 + rhs.z1, self.z2 + rhs.z2)
    }
}

impl AddAssign for ComplexPair {
    fn add_assign(&mut self, rhs: ComplexPair) {
        self.z1 += rhs.z1;
        self.z2 += rhs.z2;
    }
}

impl Sub for ComplexPair {
    type Output = ComplexPair;
    fn sub(self, rhs: ComplexPair) -> ComplexPair {
        ComplexPair::new(self.z1 - rhs.z1, self.z2 - rhs.z2)
    }
}

impl Neg for ComplexPair {
    type Output = ComplexPair;
    fn neg(self) -> ComplexPair {
        ComplexPair::new(-self.z1, -self.z2)
    }
}

impl Mul<f64> for ComplexPair {
    type Output = ComplexPair;
    fn mul(self, rhs: f64) -> ComplexPair {
        ComplexPair::new(self.z1 * rhs, self.z2 * rhs)
    }
}

impl Mul<ComplexPair> for f64 {
    type Output = ComplexPair;
    fn mul(self, rhs: ComplexPair) -> ComplexPair {
        rhs * self
    }
}

impl Mul<ComplexPair> for Complex {
    type Output = ComplexPair;
    fn mul(self, rhs: ComplexPair) -> ComplexPair {
        rhs.scale(self)
    }
}

pub fn hermitian_product(a: ComplexPair, b: ComplexPair) -> Complex {
    a.hermitian(b)
}

pub fn multiply_by_i(a: ComplexPair) -> ComplexPair {
    a.mul_i()
}

/// `⟨x, Jy⟩` for complex numbers viewed as vectors of R², with `J` the +π/2 rotation.
pub fn inner_with_rotated(x: Complex, y: Complex) -> f64 {
    (x * y.conj()).im
}

/// `⟨x, y⟩` for complex numbers viewed as vectors of R².
pub fn inner_c(x: Complex, y: Complex) -> f64 {
    (x * y.conj()).re
}

/// The two quadrics of C² that host Legendre curves.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AmbientQuadric {
    /// `|z₁|² + |z₂|² = 1`
    Sphere3,
    /// `|z₁|² − |z₂|² = −1`
    AntiDeSitter3,
}

impl AmbientQuadric {
    /// Sign of the second component in the (possibly indefinite) Hermitian form.
    pub fn signature(self) -> f64 {
        match self {
            AmbientQuadric::Sphere3 => 1.0,
            AmbientQuadric::AntiDeSitter3 => -1.0,
        }
    }

    /// Right-hand side of the defining equation.
    pub fn level(self) -> f64 {
        match self {
            AmbientQuadric::Sphere3 => 1.0,
            AmbientQuadric::AntiDeSitter3 => -1.0,
        }
    }

    /// `z₁w̄₁ ± z₂w̄₂`, the Hermitian form the quadric is a level set of.
    pub fn form(self, a: ComplexPair, b: ComplexPair) -> Complex {
        a.z1 * b.z1.conj() + a.z2 * b.z2.conj() * self.signature()
    }

    pub fn form_sqr(self, a: ComplexPair) -> f64 {
        a.z1.norm_sqr() + self.signature() * a.z2.norm_sqr()
    }

    pub fn name(self) -> &'static str {
        match self {
            AmbientQuadric::Sphere3 => "S3",
            AmbientQuadric::AntiDeSitter3 => "H3_1",
        }
    }
}

impl fmt::Display for AmbientQuadric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub fn quadric_residual(p: ComplexPair, q: AmbientQuadric) -> f64 {
    q.form_sqr(p) - q.level()
}
