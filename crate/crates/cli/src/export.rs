//! Plain-text writers. Every float column is written with Rust's shortest
//! round-trip formatting, so outputs are byte-identical across runs.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use lagsurf_core::curve::LegendreCurve;
use lagsurf_core::surface::SurfaceGrid;
use serde::Serialize;

use crate::config::CurveSpec;
use crate::report::first_integral;

pub const CURVE_HEADER: &str =
    "param,re_p1,im_p1,re_p2,im_p2,re_v1,im_v1,re_v2,im_v2,curvature,legendre_angle,modulus1,first_integral";

pub const SIDECAR_HEADER: &str = "i,j,t,s,re_phi1,im_phi1,re_phi2,im_phi2";

/// One row per sample: position and velocity in `C²`, `k`, `θ`, `|γ₁|` and
/// the CMC first integral `r'² ± r² + r⁴ − 1`.
pub fn curve_csv(curve: &LegendreCurve) -> String {
    let fi = first_integral(curve);
    let (k, theta) = (curve.curvature(), curve.legendre_angle());
    let mut out = String::with_capacity(curve.len() * 200);
    out.push_str(CURVE_HEADER);
    out.push('\n');
    for (i, j) in curve.jets().iter().enumerate() {
        let (p, v) = (j.position, j.velocity);
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{},{},{},{}",
            j.param,
            p.z1.re,
            p.z1.im,
            p.z2.re,
            p.z2.im,
            v.z1.re,
            v.z1.im,
            v.z2.re,
            v.z2.im,
            k[i],
            theta[i],
            p.z1.norm(),
            fi[i]
        );
    }
    out
}

#[derive(Serialize)]
struct Descriptor<'a> {
    spec: &'a CurveSpec,
    ambient: &'static str,
    samples: usize,
    step: f64,
}

pub fn curve_descriptor(spec: &CurveSpec, curve: &LegendreCurve) -> Result<String> {
    let d = Descriptor { spec, ambient: curve.ambient().name(), samples: curve.len(), step: curve.step() };
    json(&d)
}

/// Wavefront OBJ of the projection `(Re φ₁, Im φ₁, Re φ₂)`. Each vertex is
/// followed by a `#w` comment carrying `Im φ₂`; faces are quads in row-major
/// order, 1-based.
pub fn obj(surface: &SurfaceGrid) -> String {
    let (rows, cols) = (surface.rows(), surface.cols());
    let mut out = String::with_capacity(rows * cols * 80);
    out.push_str("# lagsurf surface\n");
    out.push_str("# v Re(phi1) Im(phi1) Re(phi2); the following #w line is Im(phi2)\n");
    let _ = writeln!(out, "# grid {rows}x{cols}, vertex index 1 + i*{cols} + j");
    let pos = surface.position();
    for i in 0..rows {
        for j in 0..cols {
            let p = pos.get(i, j);
            let _ = writeln!(out, "v {:.8e} {:.8e} {:.8e}", p.z1.re, p.z1.im, p.z2.re);
            let _ = writeln!(out, "#w {:.8e}", p.z2.im);
        }
    }
    for i in 0..rows - 1 {
        for j in 0..cols - 1 {
            let a = 1 + i * cols + j;
            let _ = writeln!(out, "f {} {} {} {}", a, a + cols, a + cols + 1, a + 1);
        }
    }
    out
}

/// Full-precision positions with their grid indices and parameters.
pub fn sidecar_csv(surface: &SurfaceGrid) -> String {
    let (t, s) = (surface.t_grid(), surface.s_grid());
    let pos = surface.position();
    let mut out = String::with_capacity(surface.rows() * surface.cols() * 120);
    out.push_str(SIDECAR_HEADER);
    out.push('\n');
    for (i, ti) in t.iter().enumerate() {
        for (j, sj) in s.iter().enumerate() {
            let p = pos.get(i, j);
            let _ = writeln!(out, "{i},{j},{ti},{sj},{},{},{},{}", p.z1.re, p.z1.im, p.z2.re, p.z2.im);
        }
    }
    out
}

pub fn json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

pub fn write(dir: &Path, name: &str, contents: &str) -> Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let path = dir.join(name);
    fs::write(&path, contents).with_context(|| format!("writing {}", path.display()))
}
