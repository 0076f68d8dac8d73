use merofact_core::dirichlet;
use merofact_core::kurepa::{self, AVariant, Family, KVariant};
use merofact_core::meromorphic::{pp_contour, pp_symmetric, ContourSpec, FunctionHandle, PoleSet};
use merofact_core::specfun::{self, dist_to_integers, dist_to_nonpositive_integers};
use merofact_core::EvalConfig;
use num_complex::Complex64;
use proptest::prelude::*;

fn cfg() -> EvalConfig {
    EvalConfig::default()
}

fn point(radius: f64) -> impl Strategy<Value = Complex64> {
    (-radius..radius, -radius..radius).prop_map(|(re, im)| Complex64::new(re, im))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gamma_reflection(z in point(10.0).prop_filter("off integers", |z| dist_to_integers(*z) > 0.1)) {
        let lhs = specfun::gamma(z, &cfg()).unwrap() * specfun::gamma(1.0 - z, &cfg()).unwrap();
        let r = (lhs * specfun::sin_pi(z) / std::f64::consts::PI - 1.0).norm();
        prop_assert!(r <= 1e-10, "z = {z}: {r:e}");
    }

    #[test]
    fn gamma_recurrence(z in point(10.0).prop_filter("off poles", |z| dist_to_nonpositive_integers(*z) > 0.1
        && dist_to_nonpositive_integers(*z + 1.0) > 0.1)) {
        let next = specfun::gamma(z + 1.0, &cfg()).unwrap();
        let r = (next - z * specfun::gamma(z, &cfg()).unwrap()).norm() / next.norm();
        prop_assert!(r <= 1e-12, "z = {z}: {r:e}");
    }

    #[test]
    fn kurepa_recurrences(z in point(5.0).prop_filter("off integers", |z| dist_to_integers(*z) > 0.2)) {
        let g = specfun::gamma(z, &cfg()).unwrap();
        let g1 = specfun::gamma(z + 1.0, &cfg()).unwrap();
        for v in [KVariant::K, KVariant::K1] {
            let (a, b) = (kurepa::kurepa(z, v, &cfg()).unwrap(), kurepa::kurepa(z - 1.0, v, &cfg()).unwrap());
            let scale = a.norm().max(b.norm()).max(g.norm());
            prop_assert!((a - b - g).norm() <= 1e-9 * scale, "{v:?} at {z}");
        }
        for v in [AVariant::A, AVariant::A1] {
            let (a, b) = (kurepa::altkurepa(z, v, &cfg()).unwrap(), kurepa::altkurepa(z - 1.0, v, &cfg()).unwrap());
            let scale = a.norm().max(b.norm()).max(g1.norm());
            prop_assert!((a + b - g1).norm() <= 1e-9 * scale, "{v:?} at {z}");
        }
    }

    #[test]
    fn eta_zeta_relation(s in (-3.0..4.0f64, -8.0..8.0f64).prop_map(|(a, b)| Complex64::new(a, b))
        .prop_filter("away from 1", |s| (s - 1.0).norm() > 0.3)) {
        let eta = dirichlet::eta(s, &cfg()).unwrap();
        let factor = 1.0 - (std::f64::consts::LN_2 * (1.0 - s)).exp();
        let zeta = dirichlet::zeta(s, &cfg()).unwrap();
        prop_assert!((eta - factor * zeta).norm() <= 1e-9 * eta.norm().max(1.0), "s = {s}");
    }

    #[test]
    fn chi_is_an_involution(s in (-3.0..3.5f64, 0.0..3.0f64).prop_map(|(a, b)| Complex64::new(a, b))
        .prop_filter("off the poles of chi", |s| dist_to_integers(*s) > 0.05)) {
        let p = dirichlet::chi(s, &cfg()).unwrap() * dirichlet::chi(1.0 - s, &cfg()).unwrap();
        prop_assert!((p - 1.0).norm() <= 1e-10, "s = {s}");
    }

    #[test]
    fn contour_is_additive(m in -4i64..=0, w in point(2.0)) {
        let a = Complex64::new(m as f64, 0.0);
        let gamma = kurepa::handle(Family::Gamma, &cfg());
        let shifted = FunctionHandle::new("shifted", PoleSet::Points(vec![a]), move |z| Ok(w / (z - a) + w * z));
        let sum = gamma.sum(&shifted);
        let spec = ContourSpec::auto(&sum, a);
        let lhs = pp_contour(&sum, a, &spec).unwrap();
        let rhs = pp_contour(&gamma, a, &spec).unwrap() + pp_contour(&shifted, a, &spec).unwrap();
        prop_assert!((lhs - rhs).norm() <= 1e-10);
    }

    #[test]
    fn principal_part_at_regular_points_is_the_value(z in point(3.0).prop_filter("far from poles",
        |z| dist_to_nonpositive_integers(*z) > 0.6)) {
        let h = kurepa::handle(Family::Gamma, &cfg());
        let f = h.eval(z).unwrap();
        let scale = f.norm().max(1.0);
        let contour = pp_contour(&h, z, &ContourSpec::auto(&h, z)).unwrap();
        let symmetric = pp_symmetric(&h, z, &cfg()).unwrap();
        prop_assert!((contour - f).norm() <= 1e-10 * scale, "contour at {z}");
        prop_assert!((symmetric - f).norm() <= 1e-10 * scale, "symmetric at {z}");
    }
}
