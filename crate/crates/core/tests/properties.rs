use proptest::prelude::*;
use semiclassical::elliptic::{epsilon, jacobi, Modulus};
use semiclassical::fluctuations::{det_longitudinal, det_transverse, CentralGreen};
use semiclassical::paths::{
    canonical_longitudinal, canonical_transverse, invert_endpoint, q_theta_max, quartic_path_from_qt, CanonicalPair,
};
use semiclassical::thermo::{z2_harmonic_integral, z_harmonic};

/// q_t strictly inside the feasible range for `theta`.
fn feasible() -> impl Strategy<Value = (f64, f64)> {
    (0.3f64..3.0, 0.02f64..0.95).prop_map(|(theta, frac)| {
        let q_max = q_theta_max(theta).unwrap().min(20.0);
        (frac * q_max, theta)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn jacobi_identities(u in -20.0f64..20.0, k in 0.0f64..=1.0) {
        let m = Modulus::new(k).unwrap();
        let j = jacobi(u, m).unwrap();
        prop_assert!((j.sn * j.sn + j.cn * j.cn - 1.0).abs() < 1e-12);
        prop_assert!((j.dn * j.dn + k * k * j.sn * j.sn - 1.0).abs() < 1e-12);
    }

    #[test]
    fn epsilon_is_odd(u in 0.0f64..10.0, k in 0.0f64..0.999) {
        let m = Modulus::new(k).unwrap();
        let (a, b) = (epsilon(u, m).unwrap(), epsilon(-u, m).unwrap());
        prop_assert!((a + b).abs() < 1e-12 * a.abs().max(1.0));
    }

    #[test]
    fn endpoint_round_trip((q_t, theta) in feasible()) {
        let p = quartic_path_from_qt(q_t, theta).unwrap();
        prop_assert!(p.q0() >= q_t);
        let back = invert_endpoint(p.q0(), theta).unwrap();
        prop_assert!((back - q_t).abs() < 1e-9 * q_t.max(1e-3));
    }

    #[test]
    fn wronskians_are_one((q_t, theta) in feasible(), frac in 0.0f64..=1.0) {
        let p = quartic_path_from_qt(q_t, theta).unwrap();
        let t = frac * theta;
        let l = canonical_longitudinal(&p).unwrap().eval(t).wronskian();
        let tr = canonical_transverse(&p).unwrap().eval(t).wronskian();
        prop_assert!((l - 1.0).abs() < 1e-8, "longitudinal {l}");
        prop_assert!((tr - 1.0).abs() < 1e-8, "transverse {tr}");
    }

    #[test]
    fn green_is_symmetric((q_t, theta) in feasible(), a in 0.0f64..=1.0, b in 0.0f64..=1.0) {
        let p = quartic_path_from_qt(q_t, theta).unwrap();
        let g = CentralGreen::new(canonical_longitudinal(&p).unwrap()).unwrap();
        let (x, y) = (a * theta, b * theta);
        let (u, v) = (g.value(x, y).unwrap(), g.value(y, x).unwrap());
        prop_assert!((u - v).abs() < 1e-12 * u.abs().max(1.0));
        prop_assert!(u >= -1e-14);
    }

    #[test]
    fn determinants_are_positive((q_t, theta) in feasible()) {
        let p = quartic_path_from_qt(q_t, theta).unwrap();
        prop_assert!(det_longitudinal(&p).unwrap() > 0.0);
        prop_assert!(det_transverse(&p).unwrap() > 0.0);
    }

    #[test]
    fn harmonic_pipeline_is_exact(dim in 1usize..=4, theta in 0.1f64..8.0) {
        let a = z2_harmonic_integral(dim, theta).unwrap().ln_z;
        let b = z_harmonic(dim, theta).unwrap().ln_z;
        prop_assert!((a - b).abs() < 1e-9);
    }
}
