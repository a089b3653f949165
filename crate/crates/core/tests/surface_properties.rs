use lagsurf_core::curve::{
    constant_curvature_hyperbolic, constant_curvature_sphere, hopf_project, HyperbolicIC, SphereIC,
};
use lagsurf_core::numeric::ParamGrid;
use lagsurf_core::surface::{build_surface, classify, willmore_functional, Label};
use lagsurf_core::{Complex, EPS_ODE};
use proptest::prelude::*;

fn pair(
    kg: f64,
    ka: f64,
    psi: f64,
    a: f64,
    delta: f64,
    b: f64,
) -> (lagsurf_core::curve::LegendreCurve, lagsurf_core::curve::LegendreCurve) {
    let g = ParamGrid::new(0.0, 1.5, 0.02).unwrap();
    let t = ParamGrid::new(-0.75, 0.75, 0.02).unwrap();
    (
        constant_curvature_hyperbolic(ka, HyperbolicIC::new(delta, b).unwrap(), &t).unwrap(),
        constant_curvature_sphere(kg, SphereIC::new(psi, a).unwrap(), &g).unwrap(),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn surface_invariants(
        kg in -4.0..4.0_f64, ka in -4.0..4.0_f64,
        psi in 0.1..1.4_f64, a in -3.0..3.0_f64,
        delta in 0.0..1.0_f64, b in -3.0..3.0_f64,
    ) {
        let (alpha, gamma) = pair(kg, ka, psi, a, delta, b);
        let s = build_surface(&alpha, &gamma).unwrap();
        let d = s.defects();
        prop_assert!(d.lagrangian < EPS_ODE && d.conformality < EPS_ODE && d.alpha_modulus < EPS_ODE);

        let beta = s.lagrangian_angle().unwrap();
        let (ta, tg) = (alpha.legendre_angle(), gamma.legendre_angle());
        let (xi, eta) = (hopf_project(&gamma), hopf_project(&alpha));
        let h = s.mean_curvature();
        let conn = s.connection_products();
        for i in 0..s.rows() {
            for j in 0..s.cols() {
                let e = Complex::cis(beta.get(i, j));
                prop_assert!((e + Complex::cis(ta[i] + tg[j])).norm() < 10.0 * EPS_ODE);
                prop_assert!((e - s.frame_determinant(i, j)).norm() < 10.0 * EPS_ODE);
                let hv = h.get(i, j);
                prop_assert!(hv.inner(s.d_t().get(i, j)).abs() < EPS_ODE);
                prop_assert!(hv.inner(s.d_s().get(i, j)).abs() < EPS_ODE);
                prop_assert!(conn.get(i, j).antisymmetry_defect() < EPS_ODE);
                let e2u = s.conformal_factor().get(i, j);
                prop_assert!((e2u - eta.points[i][2] - xi.points[j][2]).abs() < 1e-10);
                let expected = 0.5 * (ka * ka + kg * kg).sqrt() / e2u.sqrt();
                prop_assert!((s.mean_curvature_norm().get(i, j) - expected).abs() < 1e-10);
            }
        }
        prop_assert!(willmore_functional(&alpha, &gamma).relative_gap() < 1e-9);
    }

    #[test]
    fn constant_pairs_are_hamiltonian_minimal(
        kg in 0.2..4.0_f64, ka in 0.2..4.0_f64, psi in 0.1..1.4_f64, delta in 0.0..1.0_f64,
    ) {
        let (alpha, gamma) = pair(kg, ka, psi, 0.5, delta, -0.5);
        let report = classify(&build_surface(&alpha, &gamma).unwrap());
        prop_assert!(report.verdicts.hamiltonian_minimal);
        prop_assert!(!report.verdicts.minimal);
        prop_assert!(report.hm_fit.a.abs() < 1e-9);
        prop_assert!(report.label != Label::Generic);
    }
}
