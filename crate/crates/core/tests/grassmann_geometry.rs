use std::f64::consts::PI;

use grassvol::grassmann::{
    chart_point, det_lambda, det_m, grassmann_volume, grassmann_volume_exact, mc_volume,
    point_from_basis, projective_volume_quadrature, volume_density, GrassmannPoint, AffineChart,
};
use grassvol::linalg::{is_projection, ComplexMatrix};
use grassvol::random::{gaussian_matrix, haar_unitary, stiefel_frame, stream_rng};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn chart_points_are_rank_k_projections(seed in any::<u64>(), n in 2usize..=6, k_frac in 0.0f64..1.0, scale in 0.0f64..5.0) {
        let k = 1 + ((n - 1) as f64 * k_frac) as usize;
        let k = k.min(n - 1);
        let mut rng = stream_rng(seed, 0);
        let base = haar_unitary(&mut rng, n);
        let z = gaussian_matrix(&mut rng, n - k, k).scale_real(scale);
        let chart = AffineChart::new(base, z, 1e-10).unwrap();
        let p = chart_point(&chart).unwrap();
        prop_assert!(is_projection(p.matrix(), 1e-9));
        prop_assert!((p.matrix().trace().re - k as f64).abs() <= 1e-9);
        prop_assert_eq!(p.rank(), k);
    }

    #[test]
    fn complement_is_a_point(seed in any::<u64>(), n in 2usize..=6, k in 1usize..=5) {
        prop_assume!(k < n);
        let mut rng = stream_rng(seed, 1);
        let p = point_from_basis(&stiefel_frame(&mut rng, n, k), 1e-10).unwrap();
        let q = GrassmannPoint::new(p.complement().into_matrix(), 1e-9).unwrap();
        prop_assert_eq!(q.rank(), n - k);
        prop_assert_eq!(grassmann_volume_exact(k as u64, n as u64).unwrap(),
                        grassmann_volume_exact((n - k) as u64, n as u64).unwrap());
    }

    #[test]
    fn density_is_biunitarily_invariant(seed in any::<u64>(), rows in 1usize..=3, cols in 1usize..=3) {
        let mut rng = stream_rng(seed, 2);
        let z = gaussian_matrix(&mut rng, rows, cols);
        let u = haar_unitary(&mut rng, rows);
        let v = haar_unitary(&mut rng, cols);
        let n = rows + cols;
        let a = volume_density(&z, n).unwrap();
        let b = volume_density(&(&(&u * &z) * &v), n).unwrap();
        prop_assert!((a - b).abs() <= 1e-12);
        prop_assert!(a > 0.0 && a <= 1.0);
    }
}

#[test]
fn det_lambda_equals_det_m_for_200_samples_per_shape() {
    let mut rng = stream_rng(2024, 0);
    for (rows, cols) in [(1, 1), (2, 1), (2, 2), (3, 2)] {
        for _ in 0..200 {
            let z = gaussian_matrix(&mut rng, rows, cols);
            let (a, b) = (det_lambda(&z), det_m(&z));
            assert!((a - b).abs() <= 1e-10 * a.max(1.0), "{rows}x{cols}: {a} vs {b}");
        }
    }
}

#[test]
fn basis_invariance_under_right_unitary() {
    let mut rng = stream_rng(5, 0);
    let v = stiefel_frame(&mut rng, 4, 2);
    let a = haar_unitary(&mut rng, 2);
    let p1 = point_from_basis(&v, 1e-10).unwrap();
    let p2 = point_from_basis(&(&v * &a), 1e-10).unwrap();
    assert!(p1.matrix().max_diff(p2.matrix()) < 1e-12);
    assert!((p1.matrix().trace().re - 2.0).abs() < 1e-12);
    let not_frame = ComplexMatrix::from_real(2, 1, &[1.0, 1.0]).unwrap();
    assert!(point_from_basis(&not_frame, 1e-10).is_err());
}

#[test]
fn mc_reproducible_and_within_three_sigma_for_99_of_100_seeds() {
    for (k, n) in [(1usize, 2usize), (1, 3), (2, 3), (2, 4)] {
        let v = grassmann_volume(k as u64, n as u64).unwrap();
        let a = mc_volume(k, n, 20_000, 11).unwrap();
        assert_eq!(a, mc_volume(k, n, 20_000, 11).unwrap());
        let misses = (0..100u64)
            .filter(|&s| mc_volume(k, n, 20_000, s).unwrap().z_score(v).abs() > 3.0)
            .count();
        assert!(misses <= 1, "({k},{n}): {misses} of 100 seeds outside 3σ");
    }
}

#[test]
fn mc_result_does_not_depend_on_thread_count() {
    let single = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap()
        .install(|| mc_volume(2, 4, 200_000, 9).unwrap());
    let many = rayon::ThreadPoolBuilder::new()
        .num_threads(4)
        .build()
        .unwrap()
        .install(|| mc_volume(2, 4, 200_000, 9).unwrap());
    assert_eq!(single, many);
}

#[test]
fn quadrature_converges_with_order_at_least_two() {
    // below n = 10 the mapped integrands are polynomials the 4-point rule
    // integrates exactly; n = 10, 12 exercise genuine convergence
    for n in [2usize, 3, 4, 5, 10, 12] {
        let exact = PI.powi(n as i32 - 1) / (1..n).map(|j| j as f64).product::<f64>();
        let errors: Vec<f64> = [2usize, 4, 8, 16, 32]
            .iter()
            .map(|&g| (projective_volume_quadrature(n, g).unwrap() - exact).abs() / exact)
            .collect();
        for w in errors.windows(2) {
            // either still converging at ≥ 2nd order, or already at rounding level
            assert!(w[1] <= 1e-14 || w[0] / w[1] >= 4.0, "n = {n}: {errors:?}");
        }
        assert!(errors[4] <= 1e-8);
    }
}

#[test]
fn quadrature_matches_closed_form_up_to_six() {
    for n in 2..=6usize {
        let exact = grassmann_volume(1, n as u64).unwrap();
        let q = projective_volume_quadrature(n, 64).unwrap();
        assert!((q - exact).abs() / exact <= 1e-8, "n = {n}");
    }
}
