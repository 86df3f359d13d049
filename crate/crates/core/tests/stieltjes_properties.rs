mod common;

use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use stieltjes_vortex::orthopoly::{self, PolynomialSpec};
use stieltjes_vortex::stieltjes::{self, ChargeConfiguration, RationalField, SolverOptions};
use stieltjes_vortex::vortex::{self, VortexSystem};

const ONE: Complex64 = Complex64::new(1.0, 0.0);

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn solve(field: &RationalField, n: usize, gamma: Complex64) -> ChargeConfiguration {
    stieltjes::solve_equilibrium(field, n, gamma, None, &SolverOptions::default()).unwrap()
}

fn max_dev(a: &[Complex64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(z, x)| (z - c(*x, 0.0)).norm()).fold(0.0, f64::max)
}

#[test]
fn equilibria_match_roots_up_to_thirty_charges() {
    for n in 1..=30 {
        for spec in [
            PolynomialSpec::hermite(n),
            PolynomialSpec::laguerre(n, 0.0),
            PolynomialSpec::laguerre(n, 1.5),
            PolynomialSpec::jacobi(n, 0.0, 0.0),
            PolynomialSpec::jacobi(n, 0.4, -0.4),
            PolynomialSpec::jacobi(n, -0.5, -0.5),
        ] {
            let config = solve(&RationalField::for_polynomial(&spec), n, ONE);
            let dev = max_dev(&config.positions, &orthopoly::roots(&spec).unwrap());
            assert!(dev <= 1e-10, "{spec:?}: {dev:e}");
        }
    }
}

#[test]
fn equilibria_are_stationary_vortex_states() {
    for n in [1, 4, 9, 16] {
        for spec in [PolynomialSpec::hermite(n), PolynomialSpec::laguerre(n, 0.5)] {
            let config = solve(&RationalField::for_polynomial(&spec), n, ONE);
            let system = VortexSystem::from_configuration(&config).unwrap();
            let v = vortex::velocity(&system).unwrap();
            let worst = v.iter().map(|z| z.norm()).fold(0.0, f64::max);
            assert!(worst <= 10.0 * stieltjes::DEFAULT_TOL, "{spec:?}: {worst:e}");
        }
    }
}

#[test]
fn identity_examples() {
    let (lhs, rhs) = stieltjes::identity_check(&[c(-1.0, 0.0), c(1.0, 0.0)], 0).unwrap();
    assert!((lhs - c(-0.5, 0.0)).norm() < 1e-15 && (rhs - c(-0.5, 0.0)).norm() < 1e-15);
    let (lhs, rhs) = stieltjes::identity_check(&[c(0.0, 0.0), c(1.0, 0.0), c(2.0, 0.0)], 1).unwrap();
    assert!(lhs.norm() < 1e-15 && rhs.norm() < 1e-15);
}

#[test]
fn constant_background_examples() {
    let opts = stieltjes::SearchOptions::default();
    let exec = stieltjes_vortex::exec::Execution::default();
    let two = stieltjes::constant_background_search(2, c(0.0, 0.0), ONE, &opts, exec).unwrap();
    assert!(two.residual_inf > 0.0);
    let one = stieltjes::constant_background_search(1, c(0.0, 0.0), ONE, &opts, exec).unwrap();
    assert_eq!(one.residual_inf, 0.0);
}

fn points(seed: u64, n: usize) -> Vec<Complex64> {
    common::random_disk_points(&mut ChaCha8Rng::seed_from_u64(seed), n, 1e-2)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn identity_holds_for_random_points(seed in any::<u64>(), n in 1usize..=20) {
        let z = points(seed, n);
        for j in 0..n {
            let (lhs, rhs) = stieltjes::identity_check(&z, j).unwrap();
            let direct = common::pair_sum(&z, j);
            prop_assert!((lhs - rhs).norm() <= 1e-12 * (1.0 + lhs.norm()), "{} vs {}", lhs, rhs);
            prop_assert!((direct - rhs).norm() <= 1e-12 * (1.0 + lhs.norm()));
        }
    }

    #[test]
    fn residuals_sum_to_n_p_in_constant_field(seed in any::<u64>(), n in 1usize..=20, pr in -3.0f64..3.0, pi in -3.0f64..3.0, gr in -2.0f64..2.0, gi in -2.0f64..2.0) {
        prop_assume!(gr.abs() + gi.abs() > 1e-3);
        let p = c(pr, pi);
        let config = ChargeConfiguration::new(points(seed, n), c(gr, gi), RationalField::constant(p)).unwrap();
        let r = stieltjes::residual(&config).unwrap();
        let sum: Complex64 = r.iter().sum();
        let scale: f64 = r.iter().map(|x| x.norm()).sum::<f64>().max(1.0);
        prop_assert!((sum - p * n as f64).norm() <= 1e-13 * scale);
    }

    #[test]
    fn node_ode_residual_is_scaled_residual(seed in any::<u64>(), n in 1usize..=12, pr in -2.0f64..2.0, gi in -2.0f64..2.0) {
        let gamma = c(1.0, gi);
        let p = c(pr, 0.5);
        let config = ChargeConfiguration::new(points(seed, n), gamma, RationalField::constant(p)).unwrap();
        let r = stieltjes::residual(&config).unwrap();
        let e = stieltjes::node_ode_residual(&config, p);
        let f = stieltjes::node_polynomial(&config.positions);
        for j in 0..n {
            let want = f.eval_derivative(1, config.positions[j]) * 2.0 / gamma * r[j];
            prop_assert!((e[j] - want).norm() <= 1e-12 * (1.0 + want.norm()), "{} vs {}", e[j], want);
        }
    }

    #[test]
    fn hermite_equilibria_scale_with_the_field(n in 1usize..=15, scale in 0.05f64..20.0) {
        let base = solve(&RationalField::hermite(), n, ONE);
        let scaled: Vec<Complex64> = base.positions.iter().map(|z| z * scale.sqrt()).collect();
        let field = RationalField::new(c(-1.0 / scale, 0.0), c(0.0, 0.0), vec![]).unwrap();
        let config = ChargeConfiguration::new(scaled, ONE, field).unwrap();
        let r = stieltjes::residual(&config).unwrap();
        let worst = r.iter().map(|x| x.norm()).fold(0.0, f64::max);
        prop_assert!(worst <= 1e-10 / scale.sqrt().min(1.0), "residual {}", worst);
    }

    #[test]
    fn common_factor_leaves_equilibria_unchanged(n in 1usize..=12, sr in -2.0f64..2.0, si in -2.0f64..2.0, alpha in 0.0f64..2.0) {
        let s = c(sr, si);
        prop_assume!(s.norm() > 0.1);
        let field = RationalField::laguerre(alpha);
        let base = solve(&field, n, ONE);
        let other = solve(&field.scaled(s), n, s);
        let dev = base.positions.iter().zip(&other.positions).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
        prop_assert!(dev <= 1e-10, "deviation {}", dev);
    }
}

#[test]
fn imaginary_charges_share_the_real_equilibrium() {
    let hbar = 0.7;
    let gamma = c(0.0, -hbar);
    for n in 1..=12 {
        let field = RationalField::hermite();
        let base = solve(&field, n, ONE);
        let imaginary = solve(&field.scaled(gamma), n, gamma);
        let dev = base.positions.iter().zip(&imaginary.positions).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
        assert!(dev <= 1e-12, "n={n}: {dev:e}");
    }
}
