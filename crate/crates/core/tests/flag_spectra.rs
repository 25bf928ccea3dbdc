use grassvol::flag::{flag_descriptor, flag_volume, in_kernel, spectral_decompose, spectral_type, SpectralType};
use grassvol::linalg::ComplexMatrix;
use grassvol::random::{conjugated_diagonal, haar_unitary, stream_rng};
use grassvol::Error;
use proptest::prelude::*;
use rand::Rng;

#[test]
fn hundred_random_kernel_elements() {
    let mut rng = stream_rng(100, 0);
    for _ in 0..100 {
        let n = rng.random_range(1..=7usize);
        let diag: Vec<f64> = (0..n).map(|_| rng.random_range(-3..=3i32) as f64).collect();
        let x = conjugated_diagonal(&mut rng, &diag);
        assert!(in_kernel(&x, 1e-9).unwrap());
        let d = spectral_decompose(&x).unwrap();
        assert!(d.orthogonality_error() <= 1e-9);
        assert!(d.completeness_error() <= 1e-9);
        assert!(d.reconstruct().max_diff(&x) <= 1e-9);

        let mut sorted: Vec<i64> = diag.iter().map(|&v| v as i64).collect();
        sorted.sort();
        let mut pairs: Vec<(i64, usize)> = Vec::new();
        for v in sorted {
            match pairs.last_mut() {
                Some((w, c)) if *w == v => *c += 1,
                _ => pairs.push((v, 1)),
            }
        }
        assert_eq!(d.spectral_type.pairs(), pairs.as_slice());

        let u = haar_unitary(&mut rng, n);
        let y = &(&u * &x) * &u.adjoint();
        assert_eq!(spectral_type(&y).unwrap(), d.spectral_type);
    }
}

#[test]
fn perturbed_spectra_are_rejected() {
    let mut rng = stream_rng(101, 0);
    // ten times the default rounding tolerance
    let eps = 1e-6;
    for _ in 0..20 {
        let x = conjugated_diagonal(&mut rng, &[2.0, 0.0 + eps, -1.0]);
        assert!(!in_kernel(&x, 1e-9).unwrap());
        assert!(matches!(spectral_type(&x), Err(Error::NotInKernel { .. })));
    }
}

proptest! {
    #[test]
    fn descriptor_dimension_is_pairwise_product_sum(ds in prop::collection::vec(1usize..5, 1..6)) {
        let pairs: Vec<(i64, usize)> = ds.iter().enumerate().map(|(i, &d)| (i as i64, d)).collect();
        let t = SpectralType::new(pairs).unwrap();
        let desc = flag_descriptor(&t);
        let mut expected = 0;
        for i in 0..ds.len() {
            for j in i + 1..ds.len() {
                expected += ds[i] * ds[j];
            }
        }
        prop_assert_eq!(desc.complex_dimension, expected);
        prop_assert!(flag_volume(&desc.blocks).unwrap() > 0.0);
    }
}

#[test]
fn grassmannian_spectral_type() {
    for (n, k) in [(2, 1), (4, 2), (5, 3)] {
        let t = spectral_type(&ComplexMatrix::standard_projection(n, k)).unwrap();
        let d = flag_descriptor(&t);
        assert_eq!(d.blocks, vec![n - k, k]);
        assert_eq!(d.complex_dimension, k * (n - k));
    }
}
