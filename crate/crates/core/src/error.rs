use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

/// Which curve invariant was violated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Invariant {
    Quadric,
    UnitSpeed,
    Tangency,
    Legendre,
    DeterminantModulus,
    AlphaModulus,
    Conformality,
    Lagrangian,
}

impl fmt::Display for Invariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Invariant::Quadric => "quadric",
            Invariant::UnitSpeed => "unit speed",
            Invariant::Tangency => "tangency",
            Invariant::Legendre => "Legendre",
            Invariant::DeterminantModulus => "unit determinant",
            Invariant::AlphaModulus => "|α₁| = |α₂'|",
            Invariant::Conformality => "conformality",
            Invariant::Lagrangian => "Lagrangian",
        };
        f.write_str(name)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Error {
    /// A NaN or infinite value reached a module boundary.
    NonFinite { what: &'static str },
    /// Elliptic modulus outside `0 <= k < 1`.
    ModulusOutOfRange(f64),
    InvalidParameter { name: &'static str, value: f64, expected: &'static str },
    /// An invariant drifted past its gate while building a curve or surface.
    InvariantDrift { invariant: Invariant, index: usize, param: f64, residual: f64 },
    /// A formula was evaluated outside its domain (negative radicand, singular endpoint).
    Domain { what: &'static str, index: usize, param: f64, value: f64 },
    AmbientMismatch { expected: crate::AmbientQuadric, found: crate::AmbientQuadric },
    /// `γ₁` vanishes, so the quotient formula for the Lagrangian angle has a pole.
    AnglePole { t_index: usize, s_index: usize, t: f64, s: f64 },
    /// Unwrapping the Lagrangian angle along two grid paths disagreed.
    Holonomy { mismatch: f64 },
    GridTooSmall { rows: usize, cols: usize, min: usize },
    /// Coordinate frame is not conformal enough to build an orthonormal basis.
    NonConformalFrame { defect: f64 },
    NotUnitSpeed { index: usize, speed: f64 },
    ShapeMismatch { expected: usize, found: usize },
    /// Least-squares system had no unique solution.
    Degenerate { what: &'static str },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NonFinite { what } => write!(f, "non-finite value in {what}"),
            Error::ModulusOutOfRange(k) => write!(f, "elliptic modulus {k} outside [0, 1)"),
            Error::InvalidParameter { name, value, expected } => {
                write!(f, "parameter {name} = {value} out of range (expected {expected})")
            }
            Error::InvariantDrift { invariant, index, param, residual } => write!(
                f,
                "{invariant} invariant drifted to {residual:e} at sample {index} (param {param}); step too large?"
            ),
            Error::Domain { what, index, param, value } => {
                write!(f, "{what} = {value:e} at sample {index} (param {param})")
            }
            Error::AmbientMismatch { expected, found } => {
                write!(f, "expected a curve in {expected}, found one in {found}")
            }
            Error::AnglePole { t_index, s_index, t, s } => write!(
                f,
                "γ₁ vanishes at grid point ({t_index}, {s_index}) = (t {t}, s {s}); Lagrangian angle formula has a pole"
            ),
            Error::Holonomy { mismatch } => {
                write!(f, "Lagrangian angle unwrap is path dependent (mismatch {mismatch:e})")
            }
            Error::GridTooSmall { rows, cols, min } => {
                write!(f, "grid {rows}x{cols} too small, need at least {min}x{min}")
            }
            Error::NonConformalFrame { defect } => {
                write!(f, "coordinate frame not conformal (relative defect {defect:e})")
            }
            Error::NotUnitSpeed { index, speed } => {
                write!(f, "curve not unit speed at sample {index} (speed {speed})")
            }
            Error::ShapeMismatch { expected, found } => {
                write!(f, "expected {expected} samples, found {found}")
            }
            Error::Degenerate { what } => write!(f, "degenerate {what}"),
        }
    }
}

impl core::error::Error for Error {}

pub(crate) fn ensure_finite(value: f64, what: &'static str) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::NonFinite { what })
    }
}
