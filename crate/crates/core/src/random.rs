//! Random matrix ensembles used by the verification suites and tests.
//!
//! Everything here is generic over [`rand::Rng`] so callers control the
//! stream; the suites use `ChaCha8Rng`, a counter-based generator with
//! explicit 64-bit seeds and independent streams.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;
use rand_distr::StandardNormal;

use crate::linalg::ComplexMatrix;

/// Generator for stream `stream` of the family keyed by `seed`.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Standard complex normal: real and imaginary parts i.i.d. N(0, 1/2).
pub fn complex_normal<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

pub fn gaussian_matrix<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| complex_normal(rng))
}

/// Random Hermitian matrix `(G + G†)/2` from a Gaussian `G`.
pub fn hermitian<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ComplexMatrix {
    gaussian_matrix(rng, n, n).hermitian_part()
}

/// `n×k` matrix with orthonormal columns, Haar distributed on the Stiefel manifold.
pub fn stiefel_frame<R: Rng + ?Sized>(rng: &mut R, n: usize, k: usize) -> ComplexMatrix {
    assert!(k <= n, "cannot fit {k} orthonormal columns in dimension {n}");
    let g = gaussian_matrix(rng, n, k);
    orthonormalize_columns(&g)
}

/// Haar-random `U(n)` element (QR of a Gaussian matrix with the phase of R's diagonal removed).
pub fn haar_unitary<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ComplexMatrix {
    stiefel_frame(rng, n, n)
}

/// Modified Gram–Schmidt, applied twice for numerical orthogonality.
///
/// Dividing by the real norm makes every diagonal entry of the implied R
/// factor positive, which is what keeps the Haar construction unbiased.
pub fn orthonormalize_columns(a: &ComplexMatrix) -> ComplexMatrix {
    let k = a.cols();
    let mut cols: Vec<Vec<Complex64>> = (0..k).map(|j| a.column(j)).collect();
    for j in 0..k {
        for _ in 0..2 {
            for i in 0..j {
                let (done, rest) = cols.split_at_mut(j);
                let (qi, cj) = (&done[i], &mut rest[0]);
                let proj: Complex64 = qi.iter().zip(cj.iter()).map(|(q, c)| q.conj() * c).sum();
                cj.iter_mut().zip(qi).for_each(|(c, q)| *c -= proj * q);
            }
        }
        let norm = cols[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        assert!(norm > 0.0, "rank-deficient input to orthonormalize_columns");
        cols[j].iter_mut().for_each(|z| *z /= norm);
    }
    ComplexMatrix::from_columns(&cols).expect("columns have equal length")
}

/// `U·diag(values)·U†` for a Haar-random `U`.
pub fn conjugated_diagonal<R: Rng + ?Sized>(rng: &mut R, values: &[f64]) -> ComplexMatrix {
    let u = haar_unitary(rng, values.len());
    &(&u * &ComplexMatrix::from_real_diag(values)) * &u.adjoint()
}
