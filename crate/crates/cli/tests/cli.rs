use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use lagsurf::config::GridSpec;
use proptest::prelude::*;
use serde_json::Value;
use tempfile::TempDir;

fn lagsurf(dir: &Path, args: &[&str], config: &str) -> Output {
    let cfg = dir.join("job.json");
    fs::write(&cfg, config).unwrap();
    Command::new(env!("CARGO_BIN_EXE_lagsurf"))
        .args(args)
        .arg("--config")
        .arg(&cfg)
        .arg("--out")
        .arg(dir.join("out"))
        .output()
        .unwrap()
}

fn json(dir: &Path, name: &str) -> Value {
    serde_json::from_str(&fs::read_to_string(dir.join("out").join(name)).unwrap()).unwrap()
}

/// Named column of `out/curve.csv`.
fn column(dir: &Path, name: &str) -> Vec<f64> {
    let text = fs::read_to_string(dir.join("out/curve.csv")).unwrap();
    let mut lines = text.lines();
    let idx = lines.next().unwrap().split(',').position(|h| h == name).unwrap();
    lines.map(|l| l.split(',').nth(idx).unwrap().parse().unwrap()).collect()
}

#[test]
fn horizontal_circle_has_constant_modulus() {
    let dir = TempDir::new().unwrap();
    let out = lagsurf(dir.path(), &["curve"], r#"{"curve": {"family": "horizontal_circle_sphere", "psi": 0.7854}}"#);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let m = column(dir.path(), "modulus1");
    assert_eq!(m.len(), 2001);
    assert!(m.iter().all(|v| format!("{v:.4}") == "0.7071"));
    assert_eq!(json(dir.path(), "curve_report.json")["pass"], true);
}

#[test]
fn hyperbolic_geodesic_through_origin_has_angle_pi() {
    let dir = TempDir::new().unwrap();
    let out = lagsurf(dir.path(), &["curve"], r#"{"curve": {"family": "geodesic_hyperbolic", "delta": 0, "b": 0}}"#);
    assert!(out.status.success());
    let theta = column(dir.path(), "legendre_angle");
    assert!(theta.iter().all(|t| (t - std::f64::consts::PI).abs() < 1e-12));
    assert!(column(dir.path(), "first_integral").iter().all(|v| v.is_finite()));
}

#[test]
fn cmc_profile_satisfies_first_integral() {
    for family in ["cmc_profile_sphere", "cmc_profile_hyperbolic"] {
        let dir = TempDir::new().unwrap();
        let cfg = format!(r#"{{"curve": {{"family": "{family}", "start": -3, "end": 3}}}}"#);
        let out = lagsurf(dir.path(), &["curve"], &cfg);
        assert!(out.status.success());
        assert!(column(dir.path(), "first_integral").iter().all(|v| v.abs() < 1e-8));
        let r = json(dir.path(), "curve_report.json");
        assert!(r["residuals"]["first_integral"].as_f64().unwrap() < 1e-8);
    }
}

#[test]
fn geodesic_pair_is_minimal() {
    let dir = TempDir::new().unwrap();
    let cfg = r#"{
        "alpha": {"family": "geodesic_hyperbolic", "delta": 0.3, "b": 1.0, "start": -1, "end": 1},
        "gamma": {"family": "geodesic_sphere", "psi": 0.6, "a": -2.0, "end": 1.5},
        "grid": "41x41"
    }"#;
    let out = lagsurf(dir.path(), &["surface"], cfg);
    assert!(out.status.success());
    let r = json(dir.path(), "surface_report.json");
    assert_eq!(r["classification"]["label"], "minimal");
    assert!(r["oracle"]["mean_curvature"].as_f64().unwrap() < 1e-3);
}

#[test]
fn horizontal_circles_give_flat_torus() {
    let dir = TempDir::new().unwrap();
    let cfg = r#"{
        "alpha": {"family": "horizontal_circle_hyperbolic", "delta": 0.881373587019543, "end": 4},
        "gamma": {"family": "horizontal_circle_sphere", "psi": 0.785398163397448, "end": 4}
    }"#;
    let out = lagsurf(dir.path(), &["surface"], cfg);
    assert!(out.status.success());
    let r = json(dir.path(), "surface_report.json");
    assert_eq!(r["classification"]["label"], "parallel-H (flat torus)");
    assert!((r["classification"]["sphere_radius"].as_f64().unwrap() - 1.224745).abs() < 1e-6);
    assert_eq!(r["grid"], "101x101");
}

#[test]
fn cmc_pair_fits_rho() {
    let dir = TempDir::new().unwrap();
    let cfg = r#"{
        "alpha": {"family": "cmc_profile_hyperbolic", "start": -1.5, "end": 1.5},
        "gamma": {"family": "cmc_profile_sphere", "start": -1.5, "end": 1.5}
    }"#;
    let out = lagsurf(dir.path(), &["surface", "--grid", "61x81"], cfg);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    let r = json(dir.path(), "surface_report.json");
    assert_eq!(r["classification"]["label"], "cmc");
    assert!((r["classification"]["cmc_fit"]["rho"].as_f64().unwrap() - 1.5).abs() < 1e-4);
    assert_eq!(r["grid"], "61x81");
}

#[test]
fn export_is_deterministic() {
    let cfg = r#"{
        "alpha": {"family": "integrated_hyperbolic", "delta": 0.4, "b": 0.2,
                  "profile": {"linear": {"slope": 0.7, "intercept": 0.3}}, "end": 1},
        "gamma": {"family": "integrated_sphere", "psi": 0.5, "a": -1.0,
                  "profile": {"tabulated": {"x": [0, 0.5, 1], "k": [1, -0.5, 2]}}, "end": 1},
        "grid": "21x31"
    }"#;
    let (a, b) = (TempDir::new().unwrap(), TempDir::new().unwrap());
    for d in [&a, &b] {
        let out = lagsurf(d.path(), &["export"], cfg);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    }
    for name in ["alpha.csv", "alpha.json", "gamma.csv", "gamma.json", "surface.obj", "surface.csv", "surface_report.json"] {
        let x = fs::read(a.path().join("out").join(name)).unwrap();
        let y = fs::read(b.path().join("out").join(name)).unwrap();
        assert_eq!(x, y, "{name}");
    }
    let obj = fs::read_to_string(a.path().join("out/surface.obj")).unwrap();
    assert_eq!(obj.lines().filter(|l| l.starts_with("v ")).count(), 21 * 31);
    assert_eq!(obj.lines().filter(|l| l.starts_with("f ")).count(), 20 * 30);
}

#[test]
fn invalid_input_exits_two() {
    let dir = TempDir::new().unwrap();
    for cfg in [
        r#"{"curve": {"family": "spiral"}}"#,
        r#"{"curve": {"family": "geodesic_sphere", "psi": 0.3, "a": 0, "phi": 1}}"#,
        r#"{"curves": {}}"#,
        r#"{"curve": {"family": "geodesic_sphere", "psi": 3.0, "a": 0}}"#,
        r#"{"alpha": {"family": "geodesic_sphere", "psi": 0.3, "a": 0}}"#,
    ] {
        let out = lagsurf(dir.path(), &["curve"], cfg);
        assert_eq!(out.status.code(), Some(2), "{cfg}");
    }
    let out = lagsurf(dir.path(), &["surface", "--grid", "3x3"], "{}");
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn drift_exits_one() {
    let dir = TempDir::new().unwrap();
    let cfg = r#"{"curve": {"family": "integrated_sphere", "psi": 0.7, "a": 0,
                           "profile": {"constant": 40}, "step": 0.5, "end": 10}}"#;
    let out = lagsurf(dir.path(), &["curve"], cfg);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("drifted"));
}

#[test]
fn verify_passes_and_fails_under_tight_override() {
    let dir = TempDir::new().unwrap();
    let cfg = r#"{"verify": {"draws": 2, "negative_controls": true}}"#;
    let out = lagsurf(dir.path(), &["verify", "--seed", "7"], cfg);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    let r = json(dir.path(), "verify_report.json");
    assert_eq!(r["seed"], 7);
    assert!(r["negative_controls"].as_array().unwrap().iter().all(|c| c["detected"] == true));

    let out = lagsurf(dir.path(), &["verify", "--tolerance", "1e-15"], cfg);
    assert_eq!(out.status.code(), Some(1));
}

proptest! {
    #[test]
    fn grid_spec_round_trips(nt in 5usize..5000, ns in 5usize..5000) {
        let g = GridSpec { nt, ns };
        prop_assert_eq!(g.to_string().parse::<GridSpec>().unwrap(), g);
        let json = serde_json::to_string(&g).unwrap();
        prop_assert_eq!(serde_json::from_str::<GridSpec>(&json).unwrap(), g);
    }
}
