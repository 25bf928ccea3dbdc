//! Numerical toolkit for complex Grassmann manifolds and the quantum-gate
//! constructions that live on them.
//!
//! The crate is organised bottom-up:
//!
//! * [`linalg`]: dense complex matrices, Kronecker products, LU determinants,
//!   Jacobi eigendecomposition of Hermitian matrices and unitary exponentials.
//! * [`grassmann`]: projections of fixed rank, the affine chart, the symplectic
//!   volume density, closed-form volumes and two independent integrators for
//!   the Grassmannian volume integral.
//! * [`flag`]: spectral classification of the kernel of `X ↦ exp(2πiX)`.
//! * [`gates`]: Walsh–Hadamard powers, characters of Z₂ᵗ, C-NOT families,
//!   unitons and Grover reflections.
//! * [`pauli`]: clock and shift matrices and the Vandermonde (discrete
//!   Fourier) diagonaliser.
//! * [`synth`]: controlled-controlled(-controlled) U circuits built from
//!   unitary roots, with a small dense circuit simulator.
//! * [`holonomy`]: adiabatic connection, curvature and path-ordered holonomy
//!   for unitary families acting on a degenerate vacuum.

pub mod error;
pub mod flag;
pub mod gates;
pub mod grassmann;
pub mod holonomy;
pub mod linalg;
pub mod pauli;
pub mod random;
pub mod synth;

pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, HermitianEigen, Tolerances};
pub use num_complex::Complex64;
