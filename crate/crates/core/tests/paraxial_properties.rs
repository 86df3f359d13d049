use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use stieltjes_vortex::exec::Execution;
use stieltjes_vortex::paraxial::{self, BeamField, DoubleSlit, Encoding, ParaxialError};

fn random_field(seed: u64, n: usize) -> BeamField {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let amp = (0..n * n).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
    BeamField::new(n, n, 0.7, 0.9, 3.0, 0.0, amp).unwrap()
}

fn max_diff(a: &BeamField, b: &BeamField) -> f64 {
    a.amplitude.iter().zip(&b.amplitude).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

#[test]
fn constant_field_is_a_fixed_point() {
    let f = BeamField::from_fn(32, 32, 1.0, 1.0, 2.0, 0.0, |_, _| Complex64::new(0.3, -0.2)).unwrap();
    let out = paraxial::paraxial_propagate(&f, 123.0);
    assert!(max_diff(&f, &out) < 1e-14);
    let full = paraxial::helmholtz_propagate(&f, 0.75).unwrap();
    let want = Complex64::from_polar(1.0, 2.0 * 0.75);
    assert!(full.amplitude.iter().zip(&f.amplitude).all(|(o, i)| (o - i * want).norm() < 1e-14));
}

#[test]
fn gaussian_reaches_half_intensity_on_axis_at_the_rayleigh_range() {
    let (w0, k) = (16.0, 2.0);
    let zr = paraxial::rayleigh_range(w0, k);
    assert_eq!(zr, 256.0);
    let on_axis = paraxial::gaussian_reference(w0, k, zr, 0.0, 0.0);
    assert!((on_axis.norm() - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
    assert!((paraxial::beam_width(w0, k, zr) - w0 * 2f64.sqrt()).abs() < 1e-12);
    let f = paraxial::gaussian_field(256, 1.0, w0, k, 0.0).unwrap();
    let out = paraxial::paraxial_propagate(&f, zr);
    assert!((out.at(128, 128).norm() - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-6);
}

#[test]
fn wide_beam_envelopes_agree() {
    let (w0, k) = (16.0, 4.0);
    let zr = paraxial::rayleigh_range(w0, k);
    let f = paraxial::gaussian_field(512, 1.0, w0, k, 0.0).unwrap();
    let par = paraxial::paraxial_propagate(&f, zr);
    let full = paraxial::helmholtz_propagate(&paraxial::envelope_to_full(&f), zr).unwrap();
    assert!(par.relative_l2_error(&paraxial::full_to_envelope(&full)) <= 1e-3);
}

#[test]
fn evanescent_content_decays() {
    let n = 16;
    let k = 1.0;
    // Highest representable frequency pi / dx exceeds k.
    let f = BeamField::from_fn(n, n, 1.0, 1.0, k, 0.0, |x, _| Complex64::new((std::f64::consts::PI * x).cos(), 0.0)).unwrap();
    let mut prev = f.norm();
    let mut cur = f;
    for _ in 0..5 {
        cur = paraxial::helmholtz_propagate(&cur, 0.5).unwrap();
        assert!(cur.norm() < prev);
        prev = cur.norm();
    }
}

#[test]
fn carrier_round_trip_is_exact() {
    let mut f = random_field(1, 16);
    f.z = std::f64::consts::PI / f.k;
    let full = paraxial::envelope_to_full(&f);
    for (a, b) in full.amplitude.iter().zip(&f.amplitude) {
        assert!((a + b).norm() < 1e-15);
    }
    assert!(max_diff(&paraxial::full_to_envelope(&full), &f) < 1e-15);
}

#[test]
fn helmholtz_rejects_backward_steps() {
    assert!(matches!(paraxial::helmholtz_propagate(&random_field(2, 8), -1.0), Err(ParaxialError::InvalidArgument(_))));
}

#[test]
fn fringes_scale_inversely_with_separation() {
    let spacing = |d: f64| paraxial::double_slit(&DoubleSlit::new(500e-9, d, d / 5.0, 1.0)).unwrap().fringe_spacing().unwrap();
    let (s1, s2) = (spacing(40e-6), spacing(80e-6));
    assert!((s1 / s2 - 2.0).abs() < 1e-3, "{s1} {s2}");
}

#[test]
fn narrow_slits_give_flat_envelope_fringes() {
    let g = DoubleSlit { screen_extent: Some(0.02), ..DoubleSlit::new(500e-9, 50e-6, 1e-6, 1.0) };
    let p = paraxial::double_slit(&g).unwrap();
    let centre = p.positions.len() / 2;
    let peak = p.intensity[centre];
    let period = g.fringe_period();
    let h = p.sample_spacing();
    let next = centre + (period / h).round() as usize;
    let ratio = p.intensity[next] / peak;
    assert!(ratio > 0.99, "neighbouring bright fringe at {ratio}");
}

#[test]
fn slit_wider_than_separation_is_rejected() {
    assert!(paraxial::double_slit(&DoubleSlit::new(500e-9, 50e-6, 60e-6, 1.0)).is_err());
}

#[test]
fn field_files_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let f = random_field(5, 16);
    for enc in [Encoding::F64le, Encoding::Csv] {
        let path = dir.path().join("field.json");
        paraxial::write_field(&path, &f, enc).unwrap();
        let back = paraxial::read_field(&path).unwrap();
        assert_eq!(back, f);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn paraxial_step_is_unitary_and_reversible(seed in any::<u64>(), dz in -500.0f64..500.0) {
        let f = random_field(seed, 32);
        let out = paraxial::paraxial_propagate(&f, dz);
        prop_assert!(((out.norm() - f.norm()) / f.norm()).abs() <= 1e-12);
        let back = paraxial::paraxial_propagate(&out, -dz);
        prop_assert!(max_diff(&back, &f) <= 1e-12);
        prop_assert!((back.z - f.z).abs() <= 1e-12 * (1.0 + dz.abs()));
    }

    #[test]
    fn steps_compose(seed in any::<u64>(), a in 0.0f64..50.0, b in 0.0f64..50.0) {
        let f = random_field(seed, 32);
        let two = paraxial::paraxial_propagate(&paraxial::paraxial_propagate(&f, a), b);
        let one = paraxial::paraxial_propagate(&f, a + b);
        prop_assert!(max_diff(&two, &one) <= 1e-12);
        let two = paraxial::helmholtz_propagate(&paraxial::helmholtz_propagate(&f, a).unwrap(), b).unwrap();
        let one = paraxial::helmholtz_propagate(&f, a + b).unwrap();
        prop_assert!(max_diff(&two, &one) <= 1e-12);
    }

    #[test]
    fn helmholtz_keeps_propagating_fields_normalized(seed in any::<u64>(), dz in 0.0f64..100.0) {
        // k = 3 exceeds every grid frequency pi / dx with dx >= 1.1.
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let amp = (0..32 * 32).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
        let f = BeamField::new(32, 32, 1.1, 1.1, 3.0 * 2f64.sqrt(), 0.0, amp).unwrap();
        let out = paraxial::helmholtz_propagate(&f, dz).unwrap();
        prop_assert!(((out.norm() - f.norm()) / f.norm()).abs() <= 1e-12);
    }

    #[test]
    fn execution_modes_agree(seed in any::<u64>(), dz in -50.0f64..50.0) {
        let f = random_field(seed, 64);
        let s = paraxial::paraxial_propagate_with(&f, dz, Execution::Sequential);
        let p = paraxial::paraxial_propagate_with(&f, dz, Execution::Parallel);
        prop_assert_eq!(s, p);
    }
}
