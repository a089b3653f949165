use std::f64::consts::{FRAC_PI_4, PI};

use lagsurf_core::curve::{
    cmc_profile_hyperbolic, cmc_profile_sphere, constant_curvature_hyperbolic, constant_curvature_sphere,
    geodesic_hyperbolic, geodesic_sphere, horizontal_circle_hyperbolic, horizontal_circle_sphere, integrate_legendre,
    CurvatureProfile, HyperbolicIC, LegendreCurve, SphereIC,
};
use lagsurf_core::numeric::ParamGrid;
use lagsurf_core::oracle::{
    fd_c_tensor, fd_connection_products, fd_first_fundamental, fd_flat_laplacian, fd_harmonicity,
    fd_lagrangian_angle_and_h, fd_lagrangian_defect, StencilConfig, StencilOrder,
};
use lagsurf_core::surface::{build_surface, SurfaceGrid};
use lagsurf_core::{AmbientQuadric, EPS_ODE};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Fitted once over the families below at h = 1e-2 and 5e-3.
const C: f64 = 25.0;

fn grid(a: f64, b: f64, h: f64) -> ParamGrid {
    ParamGrid::new(a, b, h).unwrap()
}

fn families(h: f64, seed: u64) -> Vec<(&'static str, LegendreCurve, LegendreCurve)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let gt = grid(-0.4, 0.4, h);
    let gs = grid(0.2, 1.0, h);
    let mut out = vec![
        ("geodesic", geodesic_hyperbolic(0.3, 1.0, &gt).unwrap(), geodesic_sphere(0.6, -2.0, &gs).unwrap()),
        (
            "horizontal circles",
            horizontal_circle_hyperbolic(1.0_f64.asinh(), &gt).unwrap(),
            horizontal_circle_sphere(FRAC_PI_4, &gs).unwrap(),
        ),
        (
            "cmc profile",
            cmc_profile_hyperbolic(&grid(-0.4, 0.4, h)).unwrap(),
            cmc_profile_sphere(&grid(-0.4, 0.4, h)).unwrap(),
        ),
    ];
    for _ in 0..3 {
        let ic_a = HyperbolicIC::new(rng.gen_range(0.0..1.0), rng.gen_range(-3.0..3.0)).unwrap();
        let ic_g = SphereIC::new(rng.gen_range(0.2..1.3), rng.gen_range(-3.0..3.0)).unwrap();
        out.push((
            "constant curvature",
            constant_curvature_hyperbolic(rng.gen_range(-3.0..3.0), ic_a, &gt).unwrap(),
            constant_curvature_sphere(rng.gen_range(-3.0..3.0), ic_g, &gs).unwrap(),
        ));
        let a = rng.gen_range(-2.0..2.0);
        out.push((
            "linear curvature",
            integrate_legendre(
                AmbientQuadric::AntiDeSitter3,
                &CurvatureProfile::Linear { slope: a, intercept: rng.gen_range(-2.0..2.0) },
                ic_a.into(),
                &gt,
            )
            .unwrap(),
            integrate_legendre(
                AmbientQuadric::Sphere3,
                &CurvatureProfile::Linear { slope: rng.gen_range(-2.0..2.0), intercept: rng.gen_range(-2.0..2.0) },
                ic_g.into(),
                &gs,
            )
            .unwrap(),
        ));
    }
    out
}

/// Worst oracle/analytic gap over every quantity the oracle re-derives.
fn worst_gap(s: &SurfaceGrid, order: StencilOrder) -> f64 {
    let cfg = StencilConfig::for_surface(s, order).unwrap();
    let pos = s.position();
    let ff = fd_first_fundamental(pos, &cfg).unwrap();
    let metric = ff.sup_against(s.conformal_factor(), |f, e| (f.e - e).abs().max((f.g - e).abs()).max(f.f.abs()));
    let lag = fd_lagrangian_defect(pos, &cfg).unwrap().sup(f64::abs);
    let conn = fd_connection_products(pos, &cfg).unwrap().sup_against(&s.connection_products(), |a, b| a.max_abs_diff(&b));
    let c = fd_c_tensor(pos, &cfg).unwrap().sup_against(&s.c_tensor(), |a, b| {
        (a.ttt - b.ttt).abs().max((a.tts - b.tts).abs()).max((a.tss - b.tss).abs()).max((a.sss - b.sss).abs())
    });
    let fd = fd_lagrangian_angle_and_h(pos, &cfg).unwrap();
    let h = fd.mean_curvature.sup_against(&s.mean_curvature(), |a, b| (a - b).norm());
    let beta = s.lagrangian_angle().unwrap();
    let b0 = beta.get(fd.beta.margin, fd.beta.margin) - fd.beta.values.get(0, 0);
    let angle = fd.beta.sup_against(&beta, |a, b| (a + b0 - b).abs());
    metric.max(lag).max(conn).max(c).max(h).max(angle)
}

#[test]
fn oracle_matches_analytic_within_frozen_constant() {
    for h in [1e-2, 5e-3] {
        for (name, alpha, gamma) in families(h, 11) {
            let s = build_surface(&alpha, &gamma).unwrap();
            let gap = worst_gap(&s, StencilOrder::Second);
            assert!(gap < C * h * h + 10.0 * EPS_ODE, "{name} at h={h}: {gap:e}");
        }
    }
}

#[test]
fn fourth_order_beats_second_order_tenfold() {
    let h = 1e-2;
    for (name, alpha, gamma) in families(h, 12) {
        if name == "geodesic" || name == "horizontal circles" {
            continue;
        }
        let s = build_surface(&alpha, &gamma).unwrap();
        let two = fd_connection_products(s.position(), &StencilConfig::for_surface(&s, StencilOrder::Second).unwrap()).unwrap();
        let four = fd_connection_products(s.position(), &StencilConfig::for_surface(&s, StencilOrder::Fourth).unwrap()).unwrap();
        let analytic = s.connection_products();
        let e2 = two.sup_against(&analytic, |a, b| a.max_abs_diff(&b));
        let e4 = four.sup_against(&analytic, |a, b| a.max_abs_diff(&b));
        assert!(e4 * 10.0 <= e2, "{name}: {e2:e} vs {e4:e}");
    }
}

#[test]
fn metric_defect_converges_quadratically() {
    let gap = |h: f64| {
        let (_, alpha, gamma) = families(h, 13).into_iter().find(|f| f.0 == "linear curvature").unwrap();
        let s = build_surface(&alpha, &gamma).unwrap();
        let cfg = StencilConfig::for_surface(&s, StencilOrder::Second).unwrap();
        fd_first_fundamental(s.position(), &cfg).unwrap().sup_against(s.conformal_factor(), |f, e| (f.e - e).abs())
    };
    let ratio = gap(1e-2) / gap(5e-3);
    assert!((3.5..4.5).contains(&ratio), "{ratio}");
}

#[test]
fn plane_oracle_examples() {
    let h = 1e-3;
    let alpha = geodesic_hyperbolic(0.0, 0.0, &grid(-0.1, 0.1, h)).unwrap();
    let gamma = geodesic_sphere(0.0, PI, &grid(0.3, 0.5, h)).unwrap();
    let s = build_surface(&alpha, &gamma).unwrap();
    let cfg = StencilConfig::for_surface(&s, StencilOrder::Second).unwrap();
    assert!(fd_lagrangian_defect(s.position(), &cfg).unwrap().sup(f64::abs) < 1e-10);
    let conn = fd_connection_products(s.position(), &cfg).unwrap();
    let sg = s.s_grid();
    for i in 0..conn.values.rows() {
        for j in 0..conn.values.cols() {
            let x = sg[j + conn.margin];
            assert!((conn.values.get(i, j).tt_s - x.cos() * x.sin()).abs() < 1e-6);
        }
    }
}

#[test]
fn cmc_pair_is_not_harmonic_but_flat_torus_is() {
    let h = 5e-3;
    let (_, alpha, gamma) = families(h, 14).into_iter().find(|f| f.0 == "cmc profile").unwrap();
    let s = build_surface(&alpha, &gamma).unwrap();
    let cfg = StencilConfig::for_surface(&s, StencilOrder::Second).unwrap();
    let beta = s.lagrangian_angle().unwrap();
    let harm = fd_harmonicity(&beta, s.conformal_factor(), &cfg).unwrap();
    assert!(harm.sup(f64::abs) > 1e-2);

    let (_, alpha, gamma) = families(h, 14).into_iter().find(|f| f.0 == "horizontal circles").unwrap();
    let s = build_surface(&alpha, &gamma).unwrap();
    let fd = fd_lagrangian_angle_and_h(s.position(), &cfg).unwrap();
    assert!(fd_flat_laplacian(&fd.beta.values, &cfg).unwrap().sup(f64::abs) < 1e-6);
    assert!(fd.mean_curvature.sup(|v| (v.norm() - 0.75_f64.sqrt()).abs()) < 1e-3);
}
