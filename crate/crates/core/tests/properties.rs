//! Randomized invariants over gamma in the unit disk and moderate orders.

use std::f64::consts::PI;

use corner_toeplitz::charpoly::{charpoly_chebyshev, charpoly_recurrence, chebyshev_u, PerturbedMatrix};
use corner_toeplitz::eigvec::{eigenvector_components, norm_closed_form};
use corner_toeplitz::oracle::{charpoly_coefficients, match_spectra, oracle_eigenvalues};
use corner_toeplitz::params::GammaParameter;
use corner_toeplitz::solver::{contraction_certificate, iterate_from, BallDescriptor};
use corner_toeplitz::symbol::{theta, theta_bound, theta_prime, theta_prime_bound, THETA_REAL_PART_BOUND};
use corner_toeplitz::{make_gamma, solve_spectrum, IterationConfig};
use num_complex::Complex64;
use proptest::prelude::*;

fn gamma_strategy(max_r: f64) -> impl Strategy<Value = GammaParameter> {
    (0.05..max_r, 0.0..1.0f64).prop_map(|(r, t)| GammaParameter::from_polar(r, t).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn derived_constants(g in gamma_strategy(0.99)) {
        prop_assert!(g.delta() > 0.0);
        let ulp = f64::EPSILON * g.m_ball();
        prop_assert!((g.m_ball() - 2.0 * g.m0() * g.m1()).abs() <= 4.0 * ulp);
        prop_assert!(g.m1() / (g.n_threshold() + 1.0) <= 0.5);
    }

    #[test]
    fn bounds_hold_on_half_strip(g in gamma_strategy(0.95), x in 0.0..(2.0 * PI), y in -0.5..0.5f64) {
        let z = Complex64::new(x, y * g.delta());
        prop_assert!(theta(&g, z).unwrap().norm() <= theta_bound(&g));
        prop_assert!(theta_prime(&g, z).unwrap().norm() <= theta_prime_bound(&g));
        let on_axis = theta(&g, Complex64::new(x, 0.0)).unwrap();
        prop_assert!(on_axis.re.abs() <= THETA_REAL_PART_BOUND);
    }

    #[test]
    fn theta_symmetry(g in gamma_strategy(0.95), x in 0.01..3.13f64) {
        // Q(-z) = 1/Q(z), so theta is odd
        let z = Complex64::new(x, 0.1 * g.delta());
        let a = theta(&g, z).unwrap();
        let b = theta(&g, -z).unwrap();
        prop_assert!((a + b).norm() <= 1e-13 * (1.0 + a.norm()));
    }

    #[test]
    fn chebyshev_recurrence_matches_trig(n in 0i64..60, x in 0.05..3.09f64, y in -0.3..0.3f64) {
        let z = Complex64::new(x, y);
        let expect = ((n as f64 + 1.0) * z).sin() / z.sin();
        let got = chebyshev_u(n, z.cos());
        prop_assert!((got - expect).norm() <= 1e-9 * (1.0 + expect.norm()));
    }

    #[test]
    fn charpoly_forms_agree(g in gamma_strategy(0.95), n in 1usize..40, re in -2.0..2.0f64, im in -2.5..2.5f64) {
        let lambda = Complex64::new(re, im);
        let a = charpoly_chebyshev(g.value(), n, lambda);
        let b = charpoly_recurrence(g.value(), n, lambda);
        let c = charpoly_coefficients(g.value(), n).unwrap().evaluate(lambda);
        let scale = a.norm().max(1.0);
        prop_assert!((a - b).norm() <= 1e-10 * scale);
        prop_assert!((a - c).norm() <= 1e-9 * scale.max(3f64.powi(n as i32) * 1e-6));
    }

    #[test]
    fn spectrum_invariants(g in gamma_strategy(0.9), n in 2usize..48) {
        let cfg = IterationConfig::default();
        let spec = solve_spectrum(&g, n, &cfg).unwrap();
        let e = spec.entries();
        prop_assert_eq!(e.len(), n);
        for w in e.windows(2) {
            prop_assert!(w[0].s.re < w[1].s.re);
        }
        let m = n as f64 + 1.0;
        let trace: Complex64 = spec.eigenvalues().iter().sum();
        prop_assert!((trace - g.value()).norm() <= 1e-10 * m);
        for sol in e {
            prop_assert!(sol.s.re > 0.0 && sol.s.re < PI);
            prop_assert!(sol.fp_residual <= cfg.tol);
            prop_assert!(sol.charpoly_residual <= 1e-9 * m);
            let v = eigenvector_components(&g, n, sol).unwrap();
            prop_assert!(v.eigen_residual <= 1e-10);
            prop_assert!((v.norm_sq_closed - v.norm_sq_direct).abs() <= 1e-9 * v.norm_sq_direct);
            prop_assert!((norm_closed_form(&g, sol.s, n).unwrap() - v.norm_sq_closed).abs() == 0.0);
        }
    }

    #[test]
    fn oracle_agrees(g in gamma_strategy(0.9), n in 2usize..=32) {
        let spec = solve_spectrum(&g, n, &IterationConfig::default()).unwrap();
        let report = match_spectra(&oracle_eigenvalues(g.value(), n).unwrap(), &spec).unwrap();
        prop_assert!(report.is_success(), "max distance {}", report.max_distance);
    }

    #[test]
    fn restart_in_ball_is_unique(g in gamma_strategy(0.5), jf in 0.0..1.0f64, ang in 0.0..(2.0 * PI), rad in 0.0..1.0f64) {
        let n = g.n_threshold().ceil() as usize + 8;
        let j = 1 + (jf * (n - 1) as f64) as usize;
        let cfg = IterationConfig { enforce_contraction: true, ..IterationConfig::default() };
        let ball = BallDescriptor::new(&g, n, j).unwrap();
        let start = ball.center + Complex64::from_polar(rad * ball.radius, ang);
        let a = iterate_from(&g, n, j, start, &cfg).unwrap();
        let b = iterate_from(&g, n, j, ball.center, &cfg).unwrap();
        prop_assert!((a.s - b.s).norm() <= 10.0 * cfg.tol);
        prop_assert!(a.s.im.abs() <= g.delta() / 2.0);
        prop_assert!(contraction_certificate(&g, n, j).unwrap().sup_ratio <= 0.5);
    }

    #[test]
    fn matvec_is_linear(g in gamma_strategy(0.99), n in 1usize..30, a in -2.0..2.0f64) {
        let m = PerturbedMatrix::new(g.value(), n).unwrap();
        let x: Vec<Complex64> = (0..n).map(|k| Complex64::new((k as f64).sin(), 1.0)).collect();
        let y: Vec<Complex64> = (0..n).map(|k| Complex64::new(0.5, (k as f64).cos())).collect();
        let lhs = m.matvec(&x.iter().zip(&y).map(|(p, q)| p * a + q).collect::<Vec<_>>()).unwrap();
        let (mx, my) = (m.matvec(&x).unwrap(), m.matvec(&y).unwrap());
        for k in 0..n {
            prop_assert!((lhs[k] - (mx[k] * a + my[k])).norm() <= 1e-13);
        }
    }
}

#[test]
fn invalid_gamma_rejected() {
    for bad in [
        Complex64::new(0.0, 0.0),
        Complex64::new(1.0, 0.0),
        Complex64::new(0.6, 0.8),
        Complex64::new(f64::NAN, 0.0),
    ] {
        assert!(make_gamma(bad).is_err());
    }
}
