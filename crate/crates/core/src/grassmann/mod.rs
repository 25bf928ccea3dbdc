//! The complex Grassmannian `G_{k,n}(ℂ)` realised as rank-`k` orthogonal
//! projections in `M(n; ℂ)`.
//!
//! Points are stored as their projection matrix. Local coordinates come from
//! the affine chart: an `(n−k)×k` complex matrix `Z` together with a base
//! unitary `A`, mapped to
//!
//! ```text
//! P(Z) = A · X(Z) · E_k · X(Z)⁻¹ · A⁻¹,   X(Z) = [[1_k, −Z†], [Z, 1_{n−k}]]
//! ```
//!
//! The symplectic volume form pulls back to `det(1_k + Z†Z)^{−n}` times
//! Lebesgue measure on `ℂ^{k(n−k)}`, which is what [`volume_density`] returns.

mod integrate;
mod volume;

pub use integrate::{
    gauss_legendre, mc_volume, mc_volume_with, projective_volume_quadrature, xi_to_r,
    SamplingLaw, VolumeEstimate,
};
pub use volume::{
    grassmann_volume, grassmann_volume_exact, sphere_volume, sphere_volume_exact,
    spheres_product_exact, unitary_volume, unitary_volume_exact, PiMultiple,
};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{self, ComplexMatrix};

/// A point of `G_{k,n}(ℂ)`: a Hermitian idempotent of trace `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct GrassmannPoint {
    n: usize,
    k: usize,
    p: ComplexMatrix,
}

impl GrassmannPoint {
    /// Validates `p² = p`, `p† = p` and integral trace within `tol`.
    pub fn new(p: ComplexMatrix, tol: f64) -> Result<Self> {
        if !p.is_square() {
            return Err(Error::NotSquare {
                rows: p.rows(),
                cols: p.cols(),
            });
        }
        let deviation = linalg::projection_deviation(&p);
        if deviation > tol {
            return Err(Error::NotProjection { deviation });
        }
        let tr = p.trace();
        let k = tr.re.round();
        let trace_dev = (tr - Complex64::new(k, 0.0)).norm();
        if trace_dev > tol {
            return Err(Error::NotProjection {
                deviation: trace_dev,
            });
        }
        Ok(Self {
            n: p.rows(),
            k: k as usize,
            p,
        })
    }

    /// `E_k`.
    pub fn standard(n: usize, k: usize) -> Self {
        Self {
            n,
            k,
            p: ComplexMatrix::standard_projection(n, k),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.k
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.p
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.p
    }

    /// The involution `P ↦ 1 − P` onto `G_{n−k,n}`.
    pub fn complement(&self) -> Self {
        Self {
            n: self.n,
            k: self.n - self.k,
            p: &ComplexMatrix::identity(self.n) - &self.p,
        }
    }

    /// The uniton `1 − 2P`.
    pub fn uniton(&self) -> ComplexMatrix {
        &ComplexMatrix::identity(self.n) - &self.p.scale_real(2.0)
    }
}

/// `P = V·V†` for a frame `V` with orthonormal columns.
pub fn point_from_basis(v: &ComplexMatrix, tol: f64) -> Result<GrassmannPoint> {
    let k = v.cols();
    let deviation = (&v.adjoint() * v).max_diff(&ComplexMatrix::identity(k));
    if deviation > tol {
        return Err(Error::NotOrthonormal { deviation });
    }
    Ok(GrassmannPoint {
        n: v.rows(),
        k,
        p: v * &v.adjoint(),
    }
    .normalized())
}

impl GrassmannPoint {
    // Symmetrize away rounding so the stored matrix is Hermitian to the last bit.
    fn normalized(mut self) -> Self {
        self.p = self.p.hermitian_part();
        self
    }
}

/// Affine chart: base unitary `A` and coordinates `Z ∈ M(n−k, k; ℂ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineChart {
    n: usize,
    k: usize,
    base: ComplexMatrix,
    z: ComplexMatrix,
}

impl AffineChart {
    pub fn new(base: ComplexMatrix, z: ComplexMatrix, tol: f64) -> Result<Self> {
        let n = z.rows() + z.cols();
        if base.shape() != (n, n) {
            return Err(Error::DimensionMismatch(format!(
                "base is {}x{} but Z of shape {}x{} needs {n}x{n}",
                base.rows(),
                base.cols(),
                z.rows(),
                z.cols()
            )));
        }
        let deviation = linalg::unitarity_deviation(&base);
        if deviation > tol {
            return Err(Error::NotUnitary { deviation });
        }
        Ok(Self {
            n,
            k: z.cols(),
            base,
            z,
        })
    }

    /// Chart centred at `E_k` (base = identity).
    pub fn at_standard(z: ComplexMatrix) -> Self {
        let n = z.rows() + z.cols();
        Self {
            n,
            k: z.cols(),
            base: ComplexMatrix::identity(n),
            z,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn base(&self) -> &ComplexMatrix {
        &self.base
    }

    pub fn z(&self) -> &ComplexMatrix {
        &self.z
    }

    /// `X(Z) = [[1_k, −Z†], [Z, 1_{n−k}]]`.
    pub fn block_matrix(&self) -> ComplexMatrix {
        let (n, k) = (self.n, self.k);
        let mut x = ComplexMatrix::identity(n);
        x.set_block(0, k, &(-&self.z.adjoint()));
        x.set_block(k, 0, &self.z);
        x
    }
}

/// Evaluates the chart map `Z ↦ A·X·E_k·X⁻¹·A⁻¹`.
pub fn chart_point(chart: &AffineChart) -> Result<GrassmannPoint> {
    let x = chart.block_matrix();
    let x_inv = linalg::inverse(&x)?;
    let ek = ComplexMatrix::standard_projection(chart.n, chart.k);
    let inner = &(&x * &ek) * &x_inv;
    let a = &chart.base;
    let p = &(a * &inner) * &a.adjoint();
    Ok(GrassmannPoint {
        n: chart.n,
        k: chart.k,
        p,
    }
    .normalized())
}

/// `det Λ_k = det(1_k + Z†Z)`, always real and ≥ 1.
pub fn det_lambda(z: &ComplexMatrix) -> f64 {
    let lambda = &ComplexMatrix::identity(z.cols()) + &(&z.adjoint() * z);
    linalg::det(&lambda).expect("Λ_k is square").re
}

/// `det M_{n−k} = det(1_{n−k} + ZZ†)`.
pub fn det_m(z: &ComplexMatrix) -> f64 {
    let m = &ComplexMatrix::identity(z.rows()) + &(z * &z.adjoint());
    linalg::det(&m).expect("M_{n-k} is square").re
}

/// Volume density `det(1_k + Z†Z)^{−n}` with respect to Lebesgue measure on
/// the real and imaginary parts of `Z`.
pub fn volume_density(z: &ComplexMatrix, n: usize) -> Result<f64> {
    if z.rows() + z.cols() != n {
        return Err(Error::DimensionMismatch(format!(
            "Z is {}x{}, expected (n−k)x k with n = {n}",
            z.rows(),
            z.cols()
        )));
    }
    Ok(det_lambda(z).powi(-(n as i32)))
}

/// Number of affine charts covering `G_{k,n}`: the binomial coefficient `C(n, k)`.
pub fn chart_count(k: usize, n: usize) -> Result<u128> {
    if k > n {
        return Err(Error::InvalidArgument(format!("k = {k} exceeds n = {n}")));
    }
    let k = k.min(n - k);
    let mut c: u128 = 1;
    for i in 0..k {
        c = c * (n - i) as u128 / (i + 1) as u128;
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random;
    use approx::assert_relative_eq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const TOL: f64 = 1e-9;

    #[test]
    fn basis_of_standard_vectors_gives_e_k() {
        let v = ComplexMatrix::from_fn(5, 2, |i, j| {
            if i == j {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        });
        let p = point_from_basis(&v, TOL).unwrap();
        assert_eq!(p.matrix(), &ComplexMatrix::standard_projection(5, 2));
        assert_eq!(p.rank(), 2);
    }

    #[test]
    fn point_is_independent_of_frame_rotation() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let v = random::stiefel_frame(&mut rng, 4, 2);
        let a = random::haar_unitary(&mut rng, 2);
        let p1 = point_from_basis(&v, TOL).unwrap();
        let p2 = point_from_basis(&(&v * &a), TOL).unwrap();
        assert!(p1.matrix().max_diff(p2.matrix()) < 1e-13);
        assert_relative_eq!(p1.matrix().trace().re, 2.0, epsilon = 1e-13);
    }

    #[test]
    fn non_orthonormal_basis_rejected() {
        let v = ComplexMatrix::from_real(3, 2, &[1.0, 1.0, 0.0, 0.0, 0.0, 0.0]).unwrap();
        assert!(matches!(point_from_basis(&v, TOL), Err(Error::NotOrthonormal { .. })));
    }

    #[test]
    fn grassmann_point_validation() {
        assert!(GrassmannPoint::new(ComplexMatrix::standard_projection(4, 3), TOL).is_ok());
        let not_p = ComplexMatrix::from_real_diag(&[1.0, 0.5]);
        assert!(matches!(
            GrassmannPoint::new(not_p, TOL),
            Err(Error::NotProjection { .. })
        ));
    }

    #[test]
    fn chart_at_origin_is_base_projection() {
        let p = chart_point(&AffineChart::at_standard(ComplexMatrix::zeros(2, 3))).unwrap();
        assert_eq!(p.matrix(), &ComplexMatrix::standard_projection(5, 3));

        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let a = random::haar_unitary(&mut rng, 4);
        let chart = AffineChart::new(a.clone(), ComplexMatrix::zeros(2, 2), TOL).unwrap();
        let expected = &(&a * &ComplexMatrix::standard_projection(4, 2)) * &a.adjoint();
        assert!(chart_point(&chart).unwrap().matrix().max_diff(&expected) < 1e-13);
    }

    #[test]
    fn chart_two_by_two_closed_form() {
        // n=2, k=1: P = [[1, z̄], [z, |z|²]] / (1 + |z|²)
        let z = Complex64::new(0.7, -1.3);
        let p = chart_point(&AffineChart::at_standard(ComplexMatrix::new(1, 1, vec![z]).unwrap()))
            .unwrap();
        let s = 1.0 / (1.0 + z.norm_sqr());
        let expected = ComplexMatrix::new(
            2,
            2,
            vec![Complex64::new(s, 0.0), z.conj() * s, z * s, Complex64::new(z.norm_sqr() * s, 0.0)],
        )
        .unwrap();
        assert!(p.matrix().max_diff(&expected) < 1e-15);
    }

    #[test]
    fn chart_matches_frame_formula() {
        // X·E_k·X⁻¹ = V Λ⁻¹ V† with V = [1_k; Z]
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let z = random::gaussian_matrix(&mut rng, 3, 2);
        let p = chart_point(&AffineChart::at_standard(z.clone())).unwrap();
        let mut v = ComplexMatrix::zeros(5, 2);
        v.set_block(0, 0, &ComplexMatrix::identity(2));
        v.set_block(2, 0, &z);
        let lambda_inv = linalg::inverse(&(&v.adjoint() * &v)).unwrap();
        let expected = &(&v * &lambda_inv) * &v.adjoint();
        assert!(p.matrix().max_diff(&expected) < 1e-13);
    }

    #[test]
    fn chart_rejects_bad_base() {
        let z = ComplexMatrix::zeros(1, 1);
        assert!(AffineChart::new(ComplexMatrix::identity(3), z.clone(), TOL).is_err());
        let not_unitary = ComplexMatrix::from_real_diag(&[1.0, 2.0]);
        assert!(matches!(
            AffineChart::new(not_unitary, z, TOL),
            Err(Error::NotUnitary { .. })
        ));
    }

    #[test]
    fn det_lambda_cases() {
        assert_eq!(det_lambda(&ComplexMatrix::zeros(3, 2)), 1.0);
        let z = ComplexMatrix::new(
            3,
            1,
            vec![Complex64::new(1.0, 1.0), Complex64::new(0.5, 0.0), Complex64::new(0.0, -2.0)],
        )
        .unwrap();
        assert_relative_eq!(det_lambda(&z), 1.0 + 2.0 + 0.25 + 4.0, epsilon = 1e-14);
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let z = random::gaussian_matrix(&mut rng, 3, 2);
        assert_relative_eq!(det_lambda(&z), det_m(&z), max_relative = 1e-12);
    }

    #[test]
    fn volume_density_cases() {
        assert_eq!(volume_density(&ComplexMatrix::zeros(1, 1), 2).unwrap(), 1.0);
        let z = ComplexMatrix::new(1, 1, vec![Complex64::new(0.6, 0.8)]).unwrap();
        assert_relative_eq!(volume_density(&z, 2).unwrap(), 0.25, epsilon = 1e-15);
        assert!(volume_density(&z, 3).is_err());

        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let z = random::gaussian_matrix(&mut rng, 3, 2);
        let u = random::haar_unitary(&mut rng, 3);
        let v = random::haar_unitary(&mut rng, 2);
        let rotated = &(&u * &z) * &v;
        let d0 = volume_density(&z, 5).unwrap();
        assert!(d0 > 0.0 && d0 < 1.0);
        assert_relative_eq!(volume_density(&rotated, 5).unwrap(), d0, max_relative = 1e-12);
    }

    #[test]
    fn chart_counts() {
        assert_eq!(chart_count(1, 2).unwrap(), 2);
        assert_eq!(chart_count(2, 4).unwrap(), 6);
        assert_eq!(chart_count(3, 10).unwrap(), 120);
        assert_eq!(chart_count(0, 7).unwrap(), 1);
        assert!(chart_count(5, 4).is_err());
    }

    #[test]
    fn complement_and_uniton() {
        let p = GrassmannPoint::standard(4, 1);
        let q = p.complement();
        assert_eq!(q.rank(), 3);
        assert!(linalg::is_projection(q.matrix(), TOL));
        let u = p.uniton();
        assert!((&u * &u).max_diff(&ComplexMatrix::identity(4)) < 1e-15);
    }
}
