//! Clock and shift matrices, the `n`-dimensional cousins of `σ₃` and `σ₁`,
//! and the Vandermonde matrix that diagonalises the shift.
//!
//! With `σ = e^{2πi/n}`:
//! `Σ₁|j) = |j+1 mod n)`, `Σ₃ = diag(1, σ, …, σ^{n−1})` and
//! `W_{jk} = σ^{(n−j)k}/√n`, so the first row is all ones and the second
//! carries powers of `σ^{n−1}`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;

/// `σ^e` evaluated directly from the reduced exponent to avoid phase drift.
pub fn root_of_unity(n: usize, e: usize) -> Complex64 {
    let e = e % n;
    Complex64::from_polar(1.0, 2.0 * PI * e as f64 / n as f64)
}

fn check_dim(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("dimension must be ≥ 2, got {n}")));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClockShiftPair {
    pub n: usize,
    /// `Σ₁`, the cyclic shift.
    pub shift: ComplexMatrix,
    /// `Σ₃`, the clock.
    pub clock: ComplexMatrix,
}

impl ClockShiftPair {
    /// `Σ₃^a Σ₁^b`, assembled entrywise: `|j) ↦ σ^{a(j+b)} |j+b)`.
    pub fn weyl(&self, a: usize, b: usize) -> ComplexMatrix {
        let n = self.n;
        let mut m = ComplexMatrix::zeros(n, n);
        for j in 0..n {
            let row = (j + b) % n;
            m[(row, j)] = root_of_unity(n, a * row);
        }
        m
    }
}

pub fn clock_shift(n: usize) -> Result<ClockShiftPair> {
    check_dim(n)?;
    let mut shift = ComplexMatrix::zeros(n, n);
    for j in 0..n {
        shift[((j + 1) % n, j)] = Complex64::new(1.0, 0.0);
    }
    let clock = ComplexMatrix::from_diag(&(0..n).map(|j| root_of_unity(n, j)).collect::<Vec<_>>());
    Ok(ClockShiftPair { n, shift, clock })
}

/// The generalized Walsh–Hadamard matrix `W_{jk} = σ^{(n−j)k}/√n`.
pub fn vandermonde_w(n: usize) -> Result<ComplexMatrix> {
    check_dim(n)?;
    let s = 1.0 / (n as f64).sqrt();
    Ok(ComplexMatrix::from_fn(n, n, |j, k| root_of_unity(n, (n - j) * k) * s))
}

/// The displayed form of `W†`: `(W†)_{jk} = σ^{jk}/√n`.
pub fn vandermonde_w_adjoint(n: usize) -> Result<ComplexMatrix> {
    check_dim(n)?;
    let s = 1.0 / (n as f64).sqrt();
    Ok(ComplexMatrix::from_fn(n, n, |j, k| root_of_unity(n, j * k) * s))
}

/// `‖W Σ₃ W† − Σ₁‖_max`.
pub fn diagonalization_error(n: usize) -> Result<f64> {
    let cs = clock_shift(n)?;
    let w = vandermonde_w(n)?;
    let conj = &(&w * &cs.clock) * &w.adjoint();
    Ok(conj.max_diff(&cs.shift))
}

/// Whether `W Σ₃ W† = Σ₁` within `tol`.
pub fn diagonalize_shift(n: usize, tol: f64) -> Result<bool> {
    Ok(diagonalization_error(n)? <= tol)
}
