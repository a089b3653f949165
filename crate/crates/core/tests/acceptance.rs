//! Acceptance gate: one check per criterion, each printing a single
//! `PASS`/`FAIL` line. Run with `cargo test --test acceptance -- --nocapture`
//! to see the lines.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

use lagsurf_core::curve::{
    cmc_hyperbolic_jet, cmc_profile_hyperbolic, cmc_profile_sphere, cmc_sphere_jet, constant_curvature_hyperbolic,
    constant_curvature_sphere, geodesic_curvature, geodesic_hyperbolic, geodesic_sphere, hopf_project, hopf_velocity,
    horizontal_circle_hyperbolic, horizontal_circle_sphere, horizontal_lift, integrate_legendre, CurvatureProfile,
    HyperbolicIC, LegendreCurve, ProjectedCurve, SphereIC, CMC_ARGUMENT_SCALE,
};
use lagsurf_core::elliptic::{complete_elliptic_k, jacobi_cn_sn_dn, EllipticModulus};
use lagsurf_core::geometry::inner_with_rotated;
use lagsurf_core::numeric::{NaturalSpline, ParamGrid};
use lagsurf_core::oracle::{
    fd_flat_laplacian, fd_lagrangian_angle_and_h, StencilConfig, StencilOrder,
};
use lagsurf_core::surface::{build_surface, SurfaceGrid};
use lagsurf_core::{AmbientQuadric, Complex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn grid(a: f64, b: f64, h: f64) -> ParamGrid {
    ParamGrid::new(a, b, h).unwrap()
}

fn random_profile(rng: &mut ChaCha8Rng, start: f64, end: f64) -> CurvatureProfile {
    match rng.gen_range(0..3) {
        0 => CurvatureProfile::Constant(rng.gen_range(-5.0..5.0)),
        1 => {
            let (k0, k1) = (rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0));
            let slope = (k1 - k0) / (end - start);
            CurvatureProfile::Linear { slope, intercept: k0 - slope * start }
        }
        _ => {
            let n = 7;
            let x: Vec<f64> = (0..n).map(|i| start + (end - start) * i as f64 / (n - 1) as f64).collect();
            let y: Vec<f64> = (0..n).map(|_| rng.gen_range(-3.5..3.5)).collect();
            CurvatureProfile::Tabulated(NaturalSpline::new(x, y).unwrap())
        }
    }
}

/// A random pair integrated at step 1e-3, spans at most 6.
struct Pair {
    alpha: LegendreCurve,
    gamma: LegendreCurve,
}

fn random_pairs(n: usize, seed: u64) -> Vec<Pair> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let ls = rng.gen_range(1.0..6.0);
            let lt = rng.gen_range(1.0..6.0);
            let (gs, gt) = (grid(0.0, ls, 1e-3), grid(-0.5 * lt, 0.5 * lt, 1e-3));
            let kg = random_profile(&mut rng, gs.start(), gs.end());
            let ka = random_profile(&mut rng, gt.start(), gt.end());
            let sic = SphereIC::new(rng.gen_range(0.05..1.5), rng.gen_range(-3.1..3.1)).unwrap();
            let hic = HyperbolicIC::new(rng.gen_range(0.0..1.0), rng.gen_range(-3.1..3.1)).unwrap();
            Pair {
                alpha: integrate_legendre(AmbientQuadric::AntiDeSitter3, &ka, hic.into(), &gt).unwrap(),
                gamma: integrate_legendre(AmbientQuadric::Sphere3, &kg, sic.into(), &gs).unwrap(),
            }
        })
        .collect()
}

fn coarse(pair: &Pair) -> SurfaceGrid {
    build_surface(&pair.alpha.subsample(10), &pair.gamma.subsample(10)).unwrap()
}

fn construction_validity(pairs: &[Pair]) -> Outcome {
    let mut curve = 0.0_f64;
    let mut surf = 0.0_f64;
    for p in pairs {
        curve = curve.max(p.alpha.max_defects().max()).max(p.gamma.max_defects().max());
        let d = coarse(p).defects();
        surf = surf.max(d.lagrangian).max(d.conformality).max(d.alpha_modulus);
    }
    outcome(curve < 1e-6 && surf < 1e-6, format!("curve drift {curve:.2e}, surface defects {surf:.2e} (< 1e-6)"))
}

fn additive_angle(pairs: &[Pair]) -> Outcome {
    let mut worst = 0.0_f64;
    for p in pairs {
        let s = coarse(p);
        let beta = s.lagrangian_angle().unwrap();
        let (ta, tg) = (s.alpha().legendre_angle(), s.gamma().legendre_angle());
        for i in 0..s.rows() {
            for j in 0..s.cols() {
                worst = worst.max((Complex::cis(beta.get(i, j)) + Complex::cis(ta[i] + tg[j])).norm());
            }
        }
    }
    outcome(worst < 1e-6, format!("max |e^(i beta) + e^(i(theta_g + theta_a))| = {worst:.2e} (< 1e-6)"))
}

fn linear_pair(h: f64, a: f64, extra: f64) -> (LegendreCurve, LegendreCurve) {
    let alpha = integrate_legendre(
        AmbientQuadric::AntiDeSitter3,
        &CurvatureProfile::Linear { slope: a, intercept: 0.3 },
        HyperbolicIC::new(0.5, 0.4).unwrap().into(),
        &grid(0.0, 0.3, h),
    )
    .unwrap();
    let gamma = integrate_legendre(
        AmbientQuadric::Sphere3,
        &CurvatureProfile::Linear { slope: -a + extra, intercept: 1.1 },
        SphereIC::new(0.4, -1.0).unwrap().into(),
        &grid(0.2, 0.5, h),
    )
    .unwrap();
    (alpha, gamma)
}

fn oracle_h_error(h: f64) -> f64 {
    let (alpha, gamma) = linear_pair(h, 0.7, 0.0);
    let s = build_surface(&alpha, &gamma).unwrap();
    let cfg = StencilConfig::for_surface(&s, StencilOrder::Second).unwrap();
    let fd = fd_lagrangian_angle_and_h(s.position(), &cfg).unwrap();
    fd.mean_curvature.sup_against(&s.mean_curvature(), |a, b| (a - b).norm())
}

fn mean_curvature_law() -> Outcome {
    let e1 = oracle_h_error(1e-3);
    let e2 = oracle_h_error(5e-4);
    let ratio = e1 / e2;
    outcome(
        e1 < 1e-3 && (3.0..5.0).contains(&ratio),
        format!("|H - H_fd| = {e1:.2e} at h=1e-3, {e2:.2e} at h=5e-4, ratio {ratio:.2} (< 1e-3, ratio near 4)"),
    )
}

fn minimality() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let (mut analytic, mut fd) = (0.0_f64, 0.0_f64);
    for _ in 0..5 {
        let alpha = geodesic_hyperbolic(rng.gen_range(0.0..1.0), rng.gen_range(-3.0..3.0), &grid(-0.5, 0.5, 5e-3)).unwrap();
        let gamma = geodesic_sphere(rng.gen_range(0.1..1.4), rng.gen_range(-3.0..3.0), &grid(0.0, 1.0, 5e-3)).unwrap();
        let s = build_surface(&alpha, &gamma).unwrap();
        analytic = analytic.max(s.mean_curvature_norm().sup(f64::abs));
        let cfg = StencilConfig::for_surface(&s, StencilOrder::Second).unwrap();
        fd = fd.max(fd_lagrangian_angle_and_h(s.position(), &cfg).unwrap().mean_curvature.sup(|h| h.norm()));
    }
    let mut converse = f64::INFINITY;
    for _ in 0..10 {
        let mag = |rng: &mut ChaCha8Rng| {
            let k: f64 = rng.gen_range(0.1..5.0);
            if rng.gen_bool(0.5) {
                -k
            } else {
                k
            }
        };
        let (kg, ka) = if rng.gen_bool(0.5) { (mag(&mut rng), rng.gen_range(-0.1..0.1)) } else { (rng.gen_range(-0.1..0.1), mag(&mut rng)) };
        let gamma = constant_curvature_sphere(kg, SphereIC::new(rng.gen_range(0.1..1.4), 0.3).unwrap(), &grid(0.0, 2.0, 1e-2)).unwrap();
        let alpha = constant_curvature_hyperbolic(ka, HyperbolicIC::new(rng.gen_range(0.0..1.0), -0.7).unwrap(), &grid(-1.0, 1.0, 1e-2)).unwrap();
        let s = build_surface(&alpha, &gamma).unwrap();
        converse = converse.min(s.mean_curvature_norm().sup(f64::abs));
    }
    outcome(
        analytic < 1e-8 && fd < 1e-5 && converse > 1e-3,
        format!("geodesic sup|H| {analytic:.2e} analytic, {fd:.2e} oracle; curved pairs min sup|H| {converse:.2e}"),
    )
}

fn flat_tori() -> Outcome {
    let alpha = horizontal_circle_hyperbolic(1.0_f64.asinh(), &grid(0.0, 4.0, 1e-2)).unwrap();
    let gamma = horizontal_circle_sphere(FRAC_PI_4, &grid(0.0, 4.0, 1e-2)).unwrap();
    let s = build_surface(&alpha, &gamma).unwrap();
    let e2u = s.conformal_factor().sup(|e| (e - 1.5).abs());
    let h = s.mean_curvature_norm().sup(|h| (h - 0.75_f64.sqrt()).abs());
    let r = s.radius().sup(|r| (r - 1.5_f64.sqrt()).abs());
    let ph = s.parallel_h_residuals().sup(|r| r[0].abs().max(r[1].abs()).max(r[2].abs()));
    outcome(
        e2u < 1e-10 && h < 1e-8 && r < 1e-8 && ph < 1e-8,
        format!("e2u {e2u:.2e}, |H| {h:.2e}, radius {r:.2e}, parallel-H {ph:.2e}"),
    )
}

fn elliptic_torus() -> Outcome {
    let g = grid(-3.0, 3.0, 1e-3);
    let gamma = cmc_profile_sphere(&g).unwrap();
    let alpha = cmc_profile_hyperbolic(&g).unwrap();
    let inv = gamma.max_defects().max().max(alpha.max_defects().max());

    let mut first = 0.0_f64;
    for (c, sign) in [(&gamma, 1.0), (&alpha, -1.0)] {
        for j in c.jets() {
            let r = j.position.z1.norm();
            let dr = (j.velocity.z1 * j.position.z1.conj()).re / r;
            first = first.max((dr * dr + sign * r * r + r.powi(4) - 1.0).abs());
        }
    }

    let s = build_surface(&alpha.subsample(20), &gamma.subsample(20)).unwrap();
    let h = s.mean_curvature_norm().sup(|h| (h - 1.5).abs());

    let mut period = 0.0_f64;
    let ps = 4.0 * complete_elliptic_k(EllipticModulus::sphere()) / CMC_ARGUMENT_SCALE;
    let ph = 4.0 * complete_elliptic_k(EllipticModulus::hyperbolic()) / CMC_ARGUMENT_SCALE;
    for i in 0..=40 {
        let x = -3.0 + 0.15 * i as f64;
        let (a, b) = (cmc_sphere_jet(x).unwrap(), cmc_sphere_jet(x + ps).unwrap());
        period = period.max((a.0 - b.0).norm()).max((a.1 - b.1).norm());
        let (a, b) = (cmc_hyperbolic_jet(x).unwrap(), cmc_hyperbolic_jet(x + ph).unwrap());
        period = period.max((a.0 - b.0).norm()).max((a.1 - b.1).norm());
    }
    outcome(
        inv < 1e-8 && first < 1e-8 && h < 1e-5 && period < 1e-7,
        format!("invariants {inv:.2e}, first integrals {first:.2e}, |H|-1.5 {h:.2e}, period {period:.2e}"),
    )
}

fn oracle_laplacian(a: f64, extra: f64) -> f64 {
    let (alpha, gamma) = linear_pair(2e-3, a, extra);
    let s = build_surface(&alpha, &gamma).unwrap();
    let cfg = StencilConfig::for_surface(&s, StencilOrder::Second).unwrap();
    let fd = fd_lagrangian_angle_and_h(s.position(), &cfg).unwrap();
    fd_flat_laplacian(&fd.beta.values, &cfg).unwrap().sup(f64::abs)
}

fn hamiltonian_minimal() -> Outcome {
    let harmonic = [0.3, 0.7, 1.5].iter().map(|&a| oracle_laplacian(a, 0.0)).fold(0.0, f64::max);
    let broken = [0.3, 0.7, 1.5].iter().map(|&a| oracle_laplacian(a, 0.1)).fold(f64::INFINITY, f64::min);
    outcome(
        harmonic < 1e-5 && broken > 1e-2,
        format!("flat Laplacian {harmonic:.2e} with slopes (a, -a), {broken:.2e} with slope sum 0.1"),
    )
}

fn willmore_split(pairs: &[Pair]) -> Outcome {
    let mut gap = 0.0_f64;
    for p in pairs {
        gap = gap.max(lagsurf_core::surface::willmore_functional(&p.alpha, &p.gamma).relative_gap());
        gap = gap.max(lagsurf_core::surface::willmore_functional(&p.alpha.subsample(10), &p.gamma.subsample(10)).relative_gap());
    }
    let alpha = geodesic_hyperbolic(0.3, 1.0, &grid(-1.0, 1.0, 1e-3)).unwrap();
    let gamma = geodesic_sphere(0.5, 2.0, &grid(0.0, 3.0, 1e-3)).unwrap();
    let w = lagsurf_core::surface::willmore_functional(&alpha, &gamma);
    let geo = w.split.abs().max(w.double_integral.abs());
    outcome(gap < 1e-9 && geo < 1e-12, format!("relative gap {gap:.2e} (< 1e-9), geodesic W {geo:.2e}"))
}

fn hopf_layer() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let (mut quadric, mut ident, mut lift, mut kappa) = (0.0_f64, 0.0_f64, 0.0_f64, 0.0_f64);
    for _ in 0..6 {
        let g = grid(0.0, 2.0, 1e-3);
        let kg = random_profile(&mut rng, g.start(), g.end());
        let ka = random_profile(&mut rng, g.start(), g.end());
        let gamma = integrate_legendre(
            AmbientQuadric::Sphere3,
            &kg,
            SphereIC::new(rng.gen_range(0.1..1.4), rng.gen_range(-3.0..3.0)).unwrap().into(),
            &g,
        )
        .unwrap();
        let alpha = integrate_legendre(
            AmbientQuadric::AntiDeSitter3,
            &ka,
            HyperbolicIC::new(rng.gen_range(0.0..1.0), rng.gen_range(-3.0..3.0)).unwrap().into(),
            &g,
        )
        .unwrap();
        for (c, level) in [(&gamma, 0.5), (&alpha, -0.5)] {
            let xi = hopf_project(c);
            quadric = quadric.max(xi.max_residual());
            for (j, x) in c.jets().iter().zip(&xi.points) {
                ident = ident.max((j.position.z1.norm_sqr() - level - x[2]).abs());
            }
            for (j, x) in c.jets().iter().zip(&xi.points) {
                let v = hopf_velocity(j.position, j.velocity, c.ambient());
                let third = x[0] * v[1] - x[1] * v[0];
                ident = ident.max((inner_with_rotated(j.velocity.z1, j.position.z1) - third).abs());
            }
            let k = geodesic_curvature(&xi).unwrap();
            kappa = kappa.max(k.iter().zip(c.curvature()).fold(0.0_f64, |m, (a, b)| m.max((a - b).abs())));
            lift = lift.max(round_trip(&xi));
        }
    }
    outcome(
        quadric < 1e-10 && ident < 1e-10 && lift < 1e-5 && kappa < 1e-5,
        format!("quadric {quadric:.2e}, identities {ident:.2e}, lift round trip {lift:.2e}, curvature {kappa:.2e}"),
    )
}

fn round_trip(xi: &ProjectedCurve) -> f64 {
    let lifted = horizontal_lift(xi, 0.4).unwrap();
    let back = hopf_project(&lifted);
    back.points
        .iter()
        .zip(&xi.points)
        .fold(0.0_f64, |m, (a, b)| m.max((0..3).fold(0.0_f64, |m, k| m.max((a[k] - b[k]).abs()))))
}

/// `∫₀^{π/2} dθ/√(1 − k² sin²θ)` by the trapezoid rule, which converges
/// geometrically for this smooth even periodic integrand.
fn k_by_quadrature(k: f64) -> f64 {
    let n = 4000;
    let h = FRAC_PI_2 / n as f64;
    let f = |t: f64| 1.0 / (1.0 - k * k * t.sin().powi(2)).sqrt();
    let inner: f64 = (1..n).map(|i| f(i as f64 * h)).sum();
    h * (0.5 * f(0.0) + inner + 0.5 * f(FRAC_PI_2))
}

fn special_functions() -> Outcome {
    let mut moduli: Vec<f64> = (0..18).map(|i| i as f64 * 0.055).collect();
    moduli.push(EllipticModulus::sphere().value());
    moduli.push(EllipticModulus::hyperbolic().value());
    let (mut ident, mut quad) = (0.0_f64, 0.0_f64);
    for &k in &moduli {
        let m = EllipticModulus::new(k).unwrap();
        let big_k = complete_elliptic_k(m);
        quad = quad.max((big_k - k_by_quadrature(k)).abs());
        for i in 0..=400 {
            let x = -4.0 * big_k + 8.0 * big_k * i as f64 / 400.0;
            let v = jacobi_cn_sn_dn(x, m).unwrap();
            ident = ident
                .max((v.sn * v.sn + v.cn * v.cn - 1.0).abs())
                .max((v.dn * v.dn + k * k * v.sn * v.sn - 1.0).abs());
        }
    }
    outcome(ident < 1e-12 && quad < 1e-10, format!("Jacobi identities {ident:.2e}, K vs quadrature {quad:.2e} over 20 moduli"))
}

#[test]
fn acceptance() {
    let pairs = random_pairs(50, 2024);
    let results = [
        ("1 construction validity", construction_validity(&pairs)),
        ("2 additive angle", additive_angle(&pairs)),
        ("3 mean curvature law", mean_curvature_law()),
        ("4 minimality", minimality()),
        ("5 flat CMC tori", flat_tori()),
        ("6 elliptic CMC torus", elliptic_torus()),
        ("7 hamiltonian-minimal", hamiltonian_minimal()),
        ("8 willmore split", willmore_split(&pairs)),
        ("9 hopf layer", hopf_layer()),
        ("10 special functions", special_functions()),
    ];
    let mut failed = Vec::new();
    for (name, o) in &results {
        println!("criterion {name}: {} ({})", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        if !o.pass {
            failed.push(*name);
        }
    }
    assert!(failed.is_empty(), "failed: {failed:?}");
}

