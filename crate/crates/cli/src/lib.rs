//! Command-line companion to `lagsurf-core`: JSON job files, CSV/OBJ/JSON
//! writers and the seeded verification suite.
//!
//! Exit codes: 0 success, 1 a geometric check failed or a construction was
//! refused, 2 invalid input.

pub mod build;
pub mod config;
pub mod export;
pub mod report;
pub mod verify;

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use lagsurf_core::surface::{build_surface, SurfaceGrid};
use lagsurf_core::EPS_ODE;

use crate::config::{CurveSpec, GridSpec, JobConfig, DEFAULT_GRID};
use crate::report::{surface_report, CurveReport, SurfaceReport};

#[derive(Debug)]
pub enum Failure {
    /// Bad configuration, parameters or IO.
    Input(String),
    /// A construction was refused or an invariant drifted.
    Geometry(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Geometry(_) => 1,
            Failure::Input(_) => 2,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Input(m) => write!(f, "invalid input: {m}"),
            Failure::Geometry(m) => write!(f, "geometric failure: {m}"),
        }
    }
}

impl std::error::Error for Failure {}

impl From<lagsurf_core::Error> for Failure {
    fn from(e: lagsurf_core::Error) -> Self {
        use lagsurf_core::Error as E;
        match e {
            E::InvalidParameter { .. }
            | E::ModulusOutOfRange(_)
            | E::AmbientMismatch { .. }
            | E::ShapeMismatch { .. }
            | E::GridTooSmall { .. } => Failure::Input(e.to_string()),
            _ => Failure::Geometry(e.to_string()),
        }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Input(format!("{e:#}"))
    }
}

pub type Outcome<T> = std::result::Result<T, Failure>;

/// Flags shared by every subcommand. Command-line values win over the job file.
#[derive(Clone, Debug, Default)]
pub struct Options {
    pub config: Option<PathBuf>,
    pub out: PathBuf,
    pub seed: Option<u64>,
    pub tolerance: Option<f64>,
    pub grid: Option<GridSpec>,
}

pub fn load(opts: &Options) -> Outcome<JobConfig> {
    let Some(path) = &opts.config else { return Ok(JobConfig::default()) };
    let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("reading {}: {e}", path.display())))?;
    let cfg = JobConfig::from_json(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    if let Some(t) = opts.tolerance {
        if !(t > 0.0 && t.is_finite()) {
            return Err(Failure::Input(format!("tolerance {t} must be positive")));
        }
    }
    Ok(cfg)
}

fn tolerance(opts: &Options, cfg: &JobConfig) -> f64 {
    opts.tolerance.or(cfg.tolerance).unwrap_or(EPS_ODE)
}

fn grid(opts: &Options, cfg: &JobConfig) -> GridSpec {
    opts.grid.or(cfg.grid).unwrap_or(DEFAULT_GRID)
}

fn single_curve(cfg: &JobConfig) -> Outcome<&CurveSpec> {
    cfg.curve
        .as_ref()
        .ok_or_else(|| Failure::Input("curve jobs need a `curve` entry".into()))
}

fn surface(cfg: &JobConfig, grid: GridSpec) -> Outcome<(&CurveSpec, &CurveSpec, SurfaceGrid)> {
    let (a, g) = cfg.pair().map_err(Failure::Input)?;
    let alpha = build::curve_sampled(a, grid.nt)?;
    let gamma = build::curve_sampled(g, grid.ns)?;
    Ok((a, g, build_surface(&alpha, &gamma)?))
}

fn write(dir: &Path, name: &str, contents: &str) -> Outcome<()> {
    Ok(export::write(dir, name, contents)?)
}

/// `curve`: integrate, write `curve.csv`, `curve.json` and `curve_report.json`.
pub fn run_curve(opts: &Options) -> Outcome<CurveReport> {
    let cfg = load(opts)?;
    let spec = single_curve(&cfg)?;
    let curve = build::curve(spec)?;
    let report = CurveReport::new(spec, &curve, tolerance(opts, &cfg));
    write(&opts.out, "curve.csv", &export::curve_csv(&curve))?;
    write(&opts.out, "curve.json", &export::curve_descriptor(spec, &curve)?)?;
    write(&opts.out, "curve_report.json", &export::json(&report)?)?;
    Ok(report)
}

/// `surface`: build on the grid, classify and write `surface_report.json`.
pub fn run_surface(opts: &Options) -> Outcome<SurfaceReport> {
    let cfg = load(opts)?;
    let grid = grid(opts, &cfg);
    let (a, g, s) = surface(&cfg, grid)?;
    let report = surface_report(a, g, grid, &s, tolerance(opts, &cfg), cfg.verify.oracle)?;
    write(&opts.out, "surface_report.json", &export::json(&report)?)?;
    Ok(report)
}

/// `verify`: seeded draws plus optional negative controls, `verify_report.json`.
pub fn run_verify(opts: &Options) -> Outcome<verify::VerifyReport> {
    let cfg = load(opts)?;
    let seed = opts.seed.or(cfg.seed).unwrap_or(0);
    let report = verify::run(seed, cfg.verify.draws, opts.tolerance.or(cfg.tolerance), cfg.verify.negative_controls)?;
    write(&opts.out, "verify_report.json", &export::json(&report)?)?;
    Ok(report)
}

/// `export`: every artifact the job's `export` block enables, without gating.
/// Returns the names written.
pub fn run_export(opts: &Options) -> Outcome<Vec<String>> {
    let cfg = load(opts)?;
    let mut written = Vec::new();
    let mut put = |name: String, text: String| -> Outcome<()> {
        write(&opts.out, &name, &text)?;
        written.push(name);
        Ok(())
    };
    let named = [("curve", &cfg.curve), ("alpha", &cfg.alpha), ("gamma", &cfg.gamma)];
    if cfg.export.curve_csv {
        for (name, spec) in named {
            if let Some(spec) = spec {
                let c = build::curve(spec)?;
                put(format!("{name}.csv"), export::curve_csv(&c))?;
                put(format!("{name}.json"), export::curve_descriptor(spec, &c)?)?;
            }
        }
    }
    if cfg.alpha.is_some() || cfg.gamma.is_some() {
        let grid = grid(opts, &cfg);
        let (a, g, s) = surface(&cfg, grid)?;
        if cfg.export.obj {
            put("surface.obj".into(), export::obj(&s))?;
        }
        if cfg.export.sidecar_csv {
            put("surface.csv".into(), export::sidecar_csv(&s))?;
        }
        if cfg.export.report {
            let report = surface_report(a, g, grid, &s, tolerance(opts, &cfg), cfg.verify.oracle)?;
            put("surface_report.json".into(), export::json(&report)?)?;
        }
    }
    if written.is_empty() {
        return Err(Failure::Input("nothing to export: give `curve`, or `alpha` and `gamma`".into()));
    }
    Ok(written)
}
