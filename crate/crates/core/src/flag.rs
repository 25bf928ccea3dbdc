//! Hermitian matrices `X` with `exp(2πiX) = 1`, classified by their integer
//! spectra.
//!
//! Such an `X` is `Σ n_j P_j` for mutually orthogonal projections `P_j`
//! summing to the identity. Its unitary orbit is the generalized flag
//! manifold `U(n)/(U(d₁)×…×U(d_j))` where `d_j = rank P_j`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grassmann::{unitary_volume_exact, GrassmannPoint, PiMultiple};
use crate::linalg::{hermitian_eigen, unitary_exp, ComplexMatrix, Tolerances};

/// Integer eigenvalues with multiplicities, eigenvalues strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SpectralType {
    pairs: Vec<(i64, usize)>,
}

impl SpectralType {
    /// Validates ordering and positive multiplicities.
    pub fn new(pairs: Vec<(i64, usize)>) -> Result<Self> {
        if pairs.is_empty() {
            return Err(Error::InvalidArgument("spectral type needs at least one eigenvalue".into()));
        }
        if pairs.iter().any(|&(_, d)| d == 0) {
            return Err(Error::InvalidArgument("multiplicities must be positive".into()));
        }
        if pairs.windows(2).any(|w| w[0].0 >= w[1].0) {
            return Err(Error::InvalidArgument(
                "eigenvalues must be strictly increasing".into(),
            ));
        }
        Ok(Self { pairs })
    }

    pub fn pairs(&self) -> &[(i64, usize)] {
        &self.pairs
    }

    /// Ambient dimension `Σ d_j`.
    pub fn dimension(&self) -> usize {
        self.pairs.iter().map(|&(_, d)| d).sum()
    }
}

#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    pub spectral_type: SpectralType,
    /// One eigenprojection per entry of `spectral_type`, in the same order.
    pub projections: Vec<GrassmannPoint>,
}

impl SpectralDecomposition {
    /// `Σ n_j P_j`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let n = self.spectral_type.dimension();
        self.spectral_type
            .pairs
            .iter()
            .zip(&self.projections)
            .fold(ComplexMatrix::zeros(n, n), |acc, (&(v, _), p)| {
                &acc + &p.matrix().scale_real(v as f64)
            })
    }

    /// `max_{k,l} ‖P_k P_l − δ_kl P_l‖_max`.
    pub fn orthogonality_error(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for (a, pa) in self.projections.iter().enumerate() {
            for (b, pb) in self.projections.iter().enumerate() {
                let prod = pa.matrix() * pb.matrix();
                let err = if a == b {
                    prod.max_diff(pb.matrix())
                } else {
                    prod.max_abs()
                };
                worst = worst.max(err);
            }
        }
        worst
    }

    /// `‖Σ P_j − 1‖_max`.
    pub fn completeness_error(&self) -> f64 {
        let n = self.spectral_type.dimension();
        self.projections
            .iter()
            .fold(ComplexMatrix::zeros(n, n), |acc, p| &acc + p.matrix())
            .max_diff(&ComplexMatrix::identity(n))
    }
}

/// Block sizes of the flag manifold and its complex dimension.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlagDescriptor {
    pub blocks: Vec<usize>,
    pub complex_dimension: usize,
}

/// True iff `‖exp(2πi·x) − 1‖_max ≤ tol`.
pub fn in_kernel(x: &ComplexMatrix, tol: f64) -> Result<bool> {
    let e = unitary_exp(x, 2.0 * PI, Tolerances::default().linalg)?;
    Ok(e.max_diff(&ComplexMatrix::identity(x.rows())) <= tol)
}

fn rounded_spectrum(x: &ComplexMatrix, tols: &Tolerances) -> Result<(Vec<i64>, ComplexMatrix)> {
    let eig = hermitian_eigen(x, tols.linalg)?;
    let mut residual: f64 = 0.0;
    let rounded: Vec<i64> = eig
        .eigenvalues
        .iter()
        .map(|&l| {
            let r = l.round();
            residual = residual.max((l - r).abs());
            r as i64
        })
        .collect();
    if residual > tols.kernel_rounding {
        return Err(Error::NotInKernel { residual });
    }
    Ok((rounded, eig.eigenvectors))
}

fn group(rounded: &[i64]) -> Vec<(i64, usize)> {
    let mut pairs: Vec<(i64, usize)> = Vec::new();
    for &v in rounded {
        match pairs.last_mut() {
            Some((last, d)) if *last == v => *d += 1,
            _ => pairs.push((v, 1)),
        }
    }
    pairs
}

/// Integer eigenvalues of `x` with multiplicities, using default tolerances.
pub fn spectral_type(x: &ComplexMatrix) -> Result<SpectralType> {
    spectral_type_with(x, &Tolerances::default())
}

pub fn spectral_type_with(x: &ComplexMatrix, tols: &Tolerances) -> Result<SpectralType> {
    let (rounded, _) = rounded_spectrum(x, tols)?;
    SpectralType::new(group(&rounded))
}

/// `x = Σ n_j P_j` with eigenprojections assembled from eigenvector outer products.
pub fn spectral_decompose(x: &ComplexMatrix) -> Result<SpectralDecomposition> {
    spectral_decompose_with(x, &Tolerances::default())
}

pub fn spectral_decompose_with(
    x: &ComplexMatrix,
    tols: &Tolerances,
) -> Result<SpectralDecomposition> {
    let (rounded, u) = rounded_spectrum(x, tols)?;
    let pairs = group(&rounded);
    let n = x.rows();
    let mut projections = Vec::with_capacity(pairs.len());
    let mut start = 0;
    for &(_, d) in &pairs {
        let frame = u.submatrix(0, start, n, d);
        let p = (&frame * &frame.adjoint()).hermitian_part();
        projections.push(GrassmannPoint::new(p, tols.predicate)?);
        start += d;
    }
    Ok(SpectralDecomposition {
        spectral_type: SpectralType::new(pairs)?,
        projections,
    })
}

/// Blocks `(d₁, …, d_j)` of `U(n)/(U(d₁)×…×U(d_j))` and its complex dimension
/// `(n² − Σ d_j²)/2`.
pub fn flag_descriptor(t: &SpectralType) -> FlagDescriptor {
    let blocks: Vec<usize> = t.pairs.iter().map(|&(_, d)| d).collect();
    let n = t.dimension();
    let squares: usize = blocks.iter().map(|d| d * d).sum();
    FlagDescriptor {
        blocks,
        complex_dimension: (n * n - squares) / 2,
    }
}

/// `Vol(U(n)) / ∏ Vol(U(d_j))`, exactly.
pub fn flag_volume_exact(blocks: &[usize]) -> Result<PiMultiple> {
    let n: usize = blocks.iter().sum();
    let denom = blocks.iter().try_fold(PiMultiple::one(), |acc, &d| {
        Ok::<_, Error>(acc * unitary_volume_exact(d as u64)?)
    })?;
    Ok(unitary_volume_exact(n as u64)? / denom)
}

pub fn flag_volume(blocks: &[usize]) -> Result<f64> {
    flag_volume_exact(blocks).map(|v| v.to_f64())
}
