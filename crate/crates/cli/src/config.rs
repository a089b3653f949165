//! Job configuration.
//!
//! A job file is a JSON object; unknown keys anywhere are rejected.
//!
//! ```json
//! {
//!   "alpha": { "family": "horizontal_circle_hyperbolic", "delta": 0.881373587, "end": 4.0 },
//!   "gamma": { "family": "horizontal_circle_sphere", "psi": 0.785398163, "end": 4.0 },
//!   "grid": "101x101",
//!   "tolerance": 1e-6,
//!   "export": { "obj": true, "sidecar_csv": true, "report": true }
//! }
//! ```
//!
//! A curve spec is `family` plus that family's parameters, and optionally
//! `start`, `end` (defaults 0 and 2) and `step` (default 1e-3).
//!
//! | family | parameters |
//! |---|---|
//! | `geodesic_sphere` | `psi`, `a` |
//! | `geodesic_hyperbolic` | `delta`, `b` |
//! | `constant_curvature_sphere` | `k`, `psi`, `a` |
//! | `constant_curvature_hyperbolic` | `k`, `delta`, `b` |
//! | `horizontal_circle_sphere` | `psi` |
//! | `horizontal_circle_hyperbolic` | `delta` |
//! | `cmc_profile_sphere`, `cmc_profile_hyperbolic` | none |
//! | `integrated_sphere` | `psi`, `a`, `profile` |
//! | `integrated_hyperbolic` | `delta`, `b`, `profile` |
//!
//! `profile` is one of `{"constant": k}`, `{"linear": {"slope": a, "intercept": b}}`
//! or `{"tabulated": {"x": [...], "k": [...]}}`.

use std::fmt;
use std::str::FromStr;

use lagsurf_core::AmbientQuadric;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::{Map, Value};

pub const DEFAULT_START: f64 = 0.0;
pub const DEFAULT_END: f64 = 2.0;
pub const DEFAULT_STEP: f64 = 1e-3;
pub const DEFAULT_GRID: GridSpec = GridSpec { nt: 101, ns: 101 };

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum ProfileSpec {
    Constant(f64),
    Linear { slope: f64, intercept: f64 },
    Tabulated { x: Vec<f64>, k: Vec<f64> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case", deny_unknown_fields)]
pub enum Family {
    GeodesicSphere { psi: f64, a: f64 },
    GeodesicHyperbolic { delta: f64, b: f64 },
    ConstantCurvatureSphere { k: f64, psi: f64, a: f64 },
    ConstantCurvatureHyperbolic { k: f64, delta: f64, b: f64 },
    HorizontalCircleSphere { psi: f64 },
    HorizontalCircleHyperbolic { delta: f64 },
    CmcProfileSphere {},
    CmcProfileHyperbolic {},
    IntegratedSphere { psi: f64, a: f64, profile: ProfileSpec },
    IntegratedHyperbolic { delta: f64, b: f64, profile: ProfileSpec },
}

impl Family {
    pub fn ambient(&self) -> AmbientQuadric {
        match self {
            Family::GeodesicSphere { .. }
            | Family::ConstantCurvatureSphere { .. }
            | Family::HorizontalCircleSphere { .. }
            | Family::CmcProfileSphere {}
            | Family::IntegratedSphere { .. } => AmbientQuadric::Sphere3,
            _ => AmbientQuadric::AntiDeSitter3,
        }
    }

    /// Families sampled from a closed form rather than integrated.
    pub fn is_closed_form(&self) -> bool {
        !matches!(self, Family::IntegratedSphere { .. } | Family::IntegratedHyperbolic { .. })
    }

    pub fn is_cmc(&self) -> bool {
        matches!(self, Family::CmcProfileSphere {} | Family::CmcProfileHyperbolic {})
    }
}

/// A family with its parameter span.
#[derive(Clone, Debug, PartialEq)]
pub struct CurveSpec {
    pub family: Family,
    pub start: f64,
    pub end: f64,
    pub step: f64,
}

impl CurveSpec {
    pub fn new(family: Family) -> Self {
        CurveSpec { family, start: DEFAULT_START, end: DEFAULT_END, step: DEFAULT_STEP }
    }

    pub fn span(mut self, start: f64, end: f64, step: f64) -> Self {
        self.start = start;
        self.end = end;
        self.step = step;
        self
    }

    pub fn validate(&self) -> Result<(), String> {
        if !(self.start.is_finite() && self.end.is_finite() && self.end > self.start) {
            return Err(format!("curve span [{}, {}] must be finite and increasing", self.start, self.end));
        }
        if !(self.step > 0.0 && self.step.is_finite() && self.step <= self.end - self.start) {
            return Err(format!("curve step {} must be positive and within the span", self.step));
        }
        Ok(())
    }
}

impl Serialize for CurveSpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = match serde_json::to_value(&self.family).map_err(serde::ser::Error::custom)? {
            Value::Object(m) => m,
            _ => return Err(serde::ser::Error::custom("family did not serialize to an object")),
        };
        for (key, v) in [("start", self.start), ("end", self.end), ("step", self.step)] {
            map.insert(key.into(), Value::from(v));
        }
        map.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CurveSpec {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let mut map = Map::deserialize(deserializer)?;
        let mut take = |key: &str, default: f64| -> Result<f64, D::Error> {
            match map.remove(key) {
                None => Ok(default),
                Some(v) => v.as_f64().ok_or_else(|| D::Error::custom(format!("`{key}` must be a number"))),
            }
        };
        let start = take("start", DEFAULT_START)?;
        let end = take("end", DEFAULT_END)?;
        let step = take("step", DEFAULT_STEP)?;
        let family = Family::deserialize(Value::Object(map)).map_err(D::Error::custom)?;
        Ok(CurveSpec { family, start, end, step })
    }
}

/// Surface sample counts `nt x ns`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GridSpec {
    pub nt: usize,
    pub ns: usize,
}

impl FromStr for GridSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (a, b) = s.split_once(['x', 'X']).ok_or_else(|| format!("grid `{s}` is not of the form <nt>x<ns>"))?;
        let parse = |p: &str| p.trim().parse::<usize>().map_err(|e| format!("grid `{s}`: {e}"));
        let (nt, ns) = (parse(a)?, parse(b)?);
        if nt < 5 || ns < 5 {
            return Err(format!("grid `{s}` needs at least 5 samples per direction"));
        }
        Ok(GridSpec { nt, ns })
    }
}

impl fmt::Display for GridSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}", self.nt, self.ns)
    }
}

impl Serialize for GridSpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for GridSpec {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        String::deserialize(deserializer)?.parse().map_err(D::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct VerifyOptions {
    /// Random curve pairs drawn per run.
    pub draws: usize,
    /// Add perturbed surfaces that the defects must flag.
    pub negative_controls: bool,
    /// Include finite-difference checks in surface reports.
    pub oracle: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { draws: 8, negative_controls: false, oracle: true }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExportOptions {
    pub curve_csv: bool,
    pub obj: bool,
    pub sidecar_csv: bool,
    pub report: bool,
}

impl Default for ExportOptions {
    fn default() -> Self {
        ExportOptions { curve_csv: true, obj: true, sidecar_csv: true, report: true }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct JobConfig {
    /// Single curve for `curve`.
    pub curve: Option<CurveSpec>,
    /// Hyperbolic generator of a surface.
    pub alpha: Option<CurveSpec>,
    /// Spherical generator of a surface.
    pub gamma: Option<CurveSpec>,
    pub grid: Option<GridSpec>,
    pub tolerance: Option<f64>,
    pub seed: Option<u64>,
    pub verify: VerifyOptions,
    pub export: ExportOptions,
}

impl JobConfig {
    pub fn from_json(text: &str) -> Result<Self, String> {
        let cfg: JobConfig = serde_json::from_str(text).map_err(|e| e.to_string())?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), String> {
        if let Some(c) = &self.curve {
            c.validate()?;
        }
        if let Some(a) = &self.alpha {
            a.validate()?;
            if a.family.ambient() != AmbientQuadric::AntiDeSitter3 {
                return Err("`alpha` must be a hyperbolic family".into());
            }
        }
        if let Some(g) = &self.gamma {
            g.validate()?;
            if g.family.ambient() != AmbientQuadric::Sphere3 {
                return Err("`gamma` must be a spherical family".into());
            }
        }
        if let Some(t) = self.tolerance {
            if !(t > 0.0 && t.is_finite()) {
                return Err(format!("tolerance {t} must be positive"));
            }
        }
        Ok(())
    }

    /// The surface pair, or an explanation of what is missing.
    pub fn pair(&self) -> Result<(&CurveSpec, &CurveSpec), String> {
        match (&self.alpha, &self.gamma) {
            (Some(a), Some(g)) => Ok((a, g)),
            _ => Err("surface jobs need both `alpha` (hyperbolic) and `gamma` (spherical)".into()),
        }
    }
}
