//! Multi-qubit gates as dense `2^t × 2^t` matrices.
//!
//! Basis states `|i)` are indexed by `i = i₁2^{t−1} + … + i_t`, so wire 1 is
//! the most significant bit. Permutation gates are assembled from their
//! action on basis states rather than from matrix products.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grassmann::GrassmannPoint;
use crate::linalg::pauli::{hadamard, sigma1};
use crate::linalg::{is_unitary, kron, kron_all, unitarity_deviation, ComplexMatrix, Tolerances};

/// Largest supported qubit count (a 1024×1024 dense matrix).
pub const MAX_QUBITS: usize = 10;

fn check_qubits(t: usize) -> Result<()> {
    if t == 0 || t > MAX_QUBITS {
        return Err(Error::InvalidArgument(format!(
            "qubit count must be in 1..={MAX_QUBITS}, got {t}"
        )));
    }
    Ok(())
}

/// A computational basis label `|i₁ … i_t)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BasisIndex {
    t: usize,
    i: usize,
}

impl BasisIndex {
    pub fn new(t: usize, i: usize) -> Result<Self> {
        check_qubits(t)?;
        if i >= 1 << t {
            return Err(Error::InvalidArgument(format!(
                "basis index {i} out of range for {t} qubits"
            )));
        }
        Ok(Self { t, i })
    }

    /// Inverse of [`bits`](Self::bits).
    pub fn from_bits(bits: &[u8]) -> Result<Self> {
        if bits.iter().any(|&b| b > 1) {
            return Err(Error::InvalidArgument("bits must be 0 or 1".into()));
        }
        let i = bits.iter().fold(0usize, |acc, &b| (acc << 1) | b as usize);
        Self::new(bits.len(), i)
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn value(&self) -> usize {
        self.i
    }

    /// `(i₁, …, i_t)`, most significant first.
    pub fn bits(&self) -> Vec<u8> {
        (0..self.t)
            .map(|k| ((self.i >> (self.t - 1 - k)) & 1) as u8)
            .collect()
    }

    /// Bit on 1-based wire `w`.
    pub fn bit(&self, wire: usize) -> u8 {
        ((self.i >> (self.t - wire)) & 1) as u8
    }
}

/// A unitary acting on `t` qubits.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GateMatrix {
    t: usize,
    m: ComplexMatrix,
}

impl GateMatrix {
    /// Validates the dimension `2^t` and unitarity within `tol`.
    pub fn new(t: usize, m: ComplexMatrix, tol: f64) -> Result<Self> {
        check_qubits(t)?;
        let dim = 1 << t;
        if m.shape() != (dim, dim) {
            return Err(Error::DimensionMismatch(format!(
                "{t}-qubit gate must be {dim}x{dim}, got {}x{}",
                m.rows(),
                m.cols()
            )));
        }
        let deviation = unitarity_deviation(&m);
        if deviation > tol {
            return Err(Error::NotUnitary { deviation });
        }
        Ok(Self { t, m })
    }

    fn trusted(t: usize, m: ComplexMatrix) -> Self {
        debug_assert!(is_unitary(&m, 1e-9));
        Self { t, m }
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn dim(&self) -> usize {
        1 << self.t
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.m
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.m
    }
}

fn one() -> Complex64 {
    Complex64::new(1.0, 0.0)
}

/// Permutation matrix with `M[map(j), j] = 1`.
pub fn permutation_gate(t: usize, map: impl Fn(usize) -> usize) -> Result<GateMatrix> {
    check_qubits(t)?;
    let n = 1 << t;
    let mut m = ComplexMatrix::zeros(n, n);
    let mut seen = vec![false; n];
    for j in 0..n {
        let i = map(j);
        if i >= n || seen[i] {
            return Err(Error::InvalidArgument("basis map is not a permutation".into()));
        }
        seen[i] = true;
        m[(i, j)] = one();
    }
    Ok(GateMatrix::trusted(t, m))
}

/// `W^{⊗t}` by repeated Kronecker products of the ±1 Hadamard pattern,
/// normalised once so each entry is the correctly rounded `±n^{−1/2}`.
pub fn walsh_power(t: usize) -> Result<GateMatrix> {
    check_qubits(t)?;
    let signs = ComplexMatrix::from_real(2, 2, &[1.0, 1.0, 1.0, -1.0])?;
    let n = (1usize << t) as f64;
    let m = kron_all(std::iter::repeat_n(&signs, t)).scale_real(1.0 / n.sqrt());
    Ok(GateMatrix::trusted(t, m))
}

/// Bitwise dot product `Σ i_k j_k` (mod 2 parity is what matters).
pub fn bit_dot(i: usize, j: usize) -> u32 {
    (i & j).count_ones()
}

/// `χ_i(j) = (−1)^{i·j}`.
pub fn character(i: BasisIndex, j: BasisIndex) -> Result<i8> {
    if i.t != j.t {
        return Err(Error::DimensionMismatch("indices for different qubit counts".into()));
    }
    Ok(if bit_dot(i.i, j.i).is_multiple_of(2) { 1 } else { -1 })
}

/// `Σ_j (i|W^{⊗t}|j)`: `√n` for `i = 0`, else 0.
pub fn row_sum(i: BasisIndex) -> Result<f64> {
    let w = walsh_power(i.t)?;
    Ok(w.m.row(i.i).iter().map(|z| z.re).sum())
}

/// `Σ_i (i|W^{⊗t}|j)`.
pub fn column_sum(j: BasisIndex) -> Result<f64> {
    let w = walsh_power(j.t)?;
    Ok(w.m.column(j.i).iter().map(|z| z.re).sum())
}

/// C-NOT on 1-based wires: `|…a…b…⟩ ↦ |…a…(a⊕b)…⟩`.
pub fn cnot(t: usize, control: usize, target: usize) -> Result<GateMatrix> {
    check_wires(t, control, target)?;
    let cbit = 1usize << (t - control);
    let tbit = 1usize << (t - target);
    permutation_gate(t, |j| if j & cbit != 0 { j ^ tbit } else { j })
}

pub(crate) fn check_wires(t: usize, control: usize, target: usize) -> Result<()> {
    check_qubits(t)?;
    if control == target {
        return Err(Error::InvalidArgument(format!(
            "control and target must differ, both are wire {control}"
        )));
    }
    if control == 0 || target == 0 || control > t || target > t {
        return Err(Error::InvalidArgument(format!(
            "wires must be in 1..={t}, got control {control}, target {target}"
        )));
    }
    Ok(())
}

/// C-NOT written as the uniton `1₄ − 2P`, with `P` diagonalised by
/// `(1₂⊗W)(σ₁⊗σ₁)`.
#[derive(Debug, Clone)]
pub struct CnotUniton {
    pub p: GrassmannPoint,
    pub diagonalizer: GateMatrix,
    /// `‖(1₄ − 2P) − C-NOT‖_max`.
    pub reconstruction_error: f64,
    /// `‖D·E₁·D⁻¹ − P‖_max`.
    pub diagonalization_error: f64,
}

pub fn cnot_uniton_decomposition() -> Result<CnotUniton> {
    let h = 0.5;
    #[rustfmt::skip]
    let p = ComplexMatrix::from_real(4, 4, &[
        0.0, 0.0, 0.0, 0.0,
        0.0, 0.0, 0.0, 0.0,
        0.0, 0.0, h, -h,
        0.0, 0.0, -h, h,
    ])?;
    let p = GrassmannPoint::new(p, Tolerances::default().predicate)?;
    let gate = cnot(2, 1, 2)?;
    let reconstruction_error = p.uniton().max_diff(gate.matrix());
    let d = &kron(&ComplexMatrix::identity(2), &hadamard()) * &kron(&sigma1(), &sigma1());
    let e1 = ComplexMatrix::standard_projection(4, 1);
    let conj = &(&d * &e1) * &d.adjoint();
    let diagonalization_error = conj.max_diff(p.matrix());
    Ok(CnotUniton {
        p,
        diagonalizer: GateMatrix::trusted(2, d),
        reconstruction_error,
        diagonalization_error,
    })
}

/// `C^{(t−1)}`-NOT: flips the last wire iff all others are 1.
pub fn repeated_cnot(t: usize) -> Result<GateMatrix> {
    if t < 2 {
        return Err(Error::InvalidArgument(format!("need t ≥ 2, got {t}")));
    }
    check_qubits(t)?;
    let n = 1usize << t;
    permutation_gate(t, |j| if j >= n - 2 { j ^ 1 } else { j })
}

/// `1^{⊗(t−1)} ⊗ W`.
pub fn last_wire_walsh(t: usize) -> Result<GateMatrix> {
    check_qubits(t)?;
    let m = kron(&ComplexMatrix::identity(1 << (t - 1)), &hadamard());
    Ok(GateMatrix::trusted(t, m))
}

/// `1_n − 2|i)(i|`, built directly.
pub fn basis_reflection(i: BasisIndex) -> GateMatrix {
    let n = 1 << i.t;
    let mut m = ComplexMatrix::identity(n);
    m[(i.i, i.i)] = -one();
    GateMatrix::trusted(i.t, m)
}

/// `F_k = 1_n − 2E_k = diag(−1_k, 1_{n−k})`.
pub fn f_matrix(t: usize, k: usize) -> Result<GateMatrix> {
    check_qubits(t)?;
    let n = 1 << t;
    if k == 0 || k > n {
        return Err(Error::InvalidArgument(format!("need 1 ≤ k ≤ {n}, got {k}")));
    }
    let diag: Vec<f64> = (0..n).map(|j| if j < k { -1.0 } else { 1.0 }).collect();
    Ok(GateMatrix::trusted(t, ComplexMatrix::from_real_diag(&diag)))
}

/// `U_i = σ₁^{i₁} ⊗ … ⊗ σ₁^{i_t}`, i.e. `|j) ↦ |j ⊕ i)`.
pub fn flip_conjugator(i: BasisIndex) -> GateMatrix {
    permutation_gate(i.t, |j| j ^ i.i).expect("xor with a fixed mask is a permutation")
}

/// `max_k ‖F_k·(U_k F₁ U_k) − F_{k+1}‖_max` over `1 ≤ k ≤ n−1`, with
/// `F_n = −1_n`.
pub fn f_recursion_error(t: usize) -> Result<f64> {
    check_qubits(t)?;
    let n = 1 << t;
    let f1 = f_matrix(t, 1)?;
    let mut worst: f64 = 0.0;
    for k in 1..n {
        let u = flip_conjugator(BasisIndex::new(t, k)?);
        let step = &(u.matrix() * f1.matrix()) * u.matrix();
        let lhs = f_matrix(t, k)?.matrix() * &step;
        worst = worst.max(lhs.max_diff(f_matrix(t, k + 1)?.matrix()));
    }
    Ok(worst)
}

pub fn f_recursion_check(t: usize, tol: f64) -> Result<bool> {
    Ok(f_recursion_error(t)? <= tol)
}

/// Grover's marked-state and diffusion reflections.
#[derive(Debug, Clone)]
pub struct GroverReflections {
    /// `1_n − 2|i)(i| = U_i F₁ U_i`.
    pub marked: GateMatrix,
    /// `1_n − 2|s)(s| = W^{⊗t} F₁ W^{⊗t}`.
    pub diffusion: GateMatrix,
    /// `|s) = W^{⊗t}|0)`.
    pub uniform: Vec<Complex64>,
}

pub fn grover_reflections(i: BasisIndex) -> Result<GroverReflections> {
    let t = i.t;
    let f1 = f_matrix(t, 1)?;
    let u = flip_conjugator(i);
    let marked = &(u.matrix() * f1.matrix()) * u.matrix();
    let w = walsh_power(t)?;
    let diffusion = &(w.matrix() * f1.matrix()) * w.matrix();
    Ok(GroverReflections {
        marked: GateMatrix::trusted(t, marked),
        diffusion: GateMatrix::trusted(t, diffusion),
        uniform: w.matrix().column(0),
    })
}

/// `(σ₁^{⊗(t−1)} ⊗ σ₁W) · C^{(t−1)}-NOT · (σ₁^{⊗(t−1)} ⊗ Wσ₁)`, which equals `F₁`.
pub fn f1_from_repeated_cnot(t: usize) -> Result<GateMatrix> {
    let c = repeated_cnot(t)?;
    let s1 = sigma1();
    let w = hadamard();
    let flips = kron_all(std::iter::repeat_n(&s1, t - 1));
    let left = kron(&flips, &(&s1 * &w));
    let right = kron(&flips, &(&w * &s1));
    Ok(GateMatrix::trusted(t, &(&left * c.matrix()) * &right))
}

/// `∏_j (1_n − 2P_j)` with the first projection as the leftmost factor.
pub fn uniton_product(t: usize, ps: &[GrassmannPoint]) -> Result<GateMatrix> {
    check_qubits(t)?;
    let n = 1 << t;
    let mut acc = ComplexMatrix::identity(n);
    for p in ps {
        if p.n() != n {
            return Err(Error::DimensionMismatch(format!(
                "projection of dimension {} in a {t}-qubit product",
                p.n()
            )));
        }
        acc = &acc * &p.uniton();
    }
    Ok(GateMatrix::trusted(t, acc))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::pauli::{sigma2, sigma3};

    fn real(n: usize, v: &[f64]) -> ComplexMatrix {
        ComplexMatrix::from_real(n, n, v).unwrap()
    }

    #[test]
    fn basis_index_round_trip() {
        for t in 1..=5 {
            for i in 0..1 << t {
                let b = BasisIndex::new(t, i).unwrap();
                assert_eq!(BasisIndex::from_bits(&b.bits()).unwrap(), b);
            }
        }
        let b = BasisIndex::new(3, 6).unwrap();
        assert_eq!(b.bits(), vec![1, 1, 0]);
        assert_eq!((b.bit(1), b.bit(3)), (1, 0));
        assert!(BasisIndex::new(2, 4).is_err());
        assert!(BasisIndex::new(0, 0).is_err());
        assert!(BasisIndex::new(MAX_QUBITS + 1, 0).is_err());
    }

    #[test]
    fn walsh_two_qubits() {
        #[rustfmt::skip]
        let expected = real(4, &[
            1.0, 1.0, 1.0, 1.0,
            1.0, -1.0, 1.0, -1.0,
            1.0, 1.0, -1.0, -1.0,
            1.0, -1.0, -1.0, 1.0,
        ]).scale_real(0.5);
        assert!(walsh_power(2).unwrap().matrix().max_diff(&expected) < 1e-15);
        assert!(walsh_power(0).is_err());
    }

    #[test]
    fn row_sums() {
        let s = row_sum(BasisIndex::new(3, 0).unwrap()).unwrap();
        assert!((s - 8f64.sqrt()).abs() < 1e-14);
        assert!(row_sum(BasisIndex::new(3, 5).unwrap()).unwrap().abs() < 1e-14);
        assert!((row_sum(BasisIndex::new(1, 0).unwrap()).unwrap() - 2f64.sqrt()).abs() < 1e-15);
        assert!(column_sum(BasisIndex::new(3, 7).unwrap()).unwrap().abs() < 1e-14);
    }

    #[test]
    fn characters() {
        let b = |i| BasisIndex::new(2, i).unwrap();
        assert_eq!(character(b(3), b(3)).unwrap(), 1);
        assert_eq!(character(b(2), b(3)).unwrap(), -1);
        assert_eq!(character(b(0), b(1)).unwrap(), 1);
        assert!(character(b(0), BasisIndex::new(3, 0).unwrap()).is_err());
    }

    #[test]
    fn cnot_matrices() {
        #[rustfmt::skip]
        let forward = real(4, &[
            1.0, 0.0, 0.0, 0.0,
            0.0, 1.0, 0.0, 0.0,
            0.0, 0.0, 0.0, 1.0,
            0.0, 0.0, 1.0, 0.0,
        ]);
        #[rustfmt::skip]
        let reverse = real(4, &[
            1.0, 0.0, 0.0, 0.0,
            0.0, 0.0, 0.0, 1.0,
            0.0, 0.0, 1.0, 0.0,
            0.0, 1.0, 0.0, 0.0,
        ]);
        assert_eq!(cnot(2, 1, 2).unwrap().matrix(), &forward);
        assert_eq!(cnot(2, 2, 1).unwrap().matrix(), &reverse);
        assert!(cnot(2, 1, 1).is_err());
        assert!(cnot(2, 1, 3).is_err());
        let c = cnot(4, 3, 1).unwrap();
        assert_eq!(c.matrix() * c.matrix(), ComplexMatrix::identity(16));
    }

    #[test]
    fn cnot_as_uniton() {
        let d = cnot_uniton_decomposition().unwrap();
        assert!(d.reconstruction_error < 1e-12);
        assert!(d.diagonalization_error < 1e-12);
        assert_eq!(d.p.rank(), 1);
    }

    #[test]
    fn repeated_cnot_cases() {
        assert_eq!(repeated_cnot(2).unwrap(), cnot(2, 1, 2).unwrap());
        let toffoli = repeated_cnot(3).unwrap();
        for j in 0..8 {
            let expected = if j >= 6 { j ^ 1 } else { j };
            assert_eq!(toffoli.matrix()[(expected, j)], one());
        }
        assert!(repeated_cnot(1).is_err());
        for t in 2..=4 {
            let w = last_wire_walsh(t).unwrap();
            let conj = &(w.matrix() * repeated_cnot(t).unwrap().matrix()) * w.matrix();
            let n = 1 << t;
            let expected = basis_reflection(BasisIndex::new(t, n - 1).unwrap());
            assert!(conj.max_diff(expected.matrix()) < 1e-12);
        }
    }

    #[test]
    fn f_family() {
        assert_eq!(
            f_matrix(2, 1).unwrap().matrix(),
            &ComplexMatrix::from_real_diag(&[-1.0, 1.0, 1.0, 1.0])
        );
        assert_eq!(f_matrix(2, 4).unwrap().matrix(), &(-&ComplexMatrix::identity(4)));
        assert!(f_matrix(2, 0).is_err());
        assert!(f_matrix(2, 5).is_err());
        for t in 1..=3 {
            assert!(f_recursion_check(t, 1e-12).unwrap());
        }
    }

    #[test]
    fn flip_conjugators_two_qubits() {
        let i2 = ComplexMatrix::identity(2);
        let u = |i| flip_conjugator(BasisIndex::new(2, i).unwrap()).into_matrix();
        assert_eq!(u(0), ComplexMatrix::identity(4));
        assert_eq!(u(1), kron(&i2, &sigma1()));
        assert_eq!(u(2), kron(&sigma1(), &i2));
        assert_eq!(u(3), kron(&sigma1(), &sigma1()));
    }

    #[test]
    fn grover_pair() {
        let i = BasisIndex::new(3, 5).unwrap();
        let g = grover_reflections(i).unwrap();
        assert!(g.marked.matrix().max_diff(basis_reflection(i).matrix()) < 1e-15);
        let norm: f64 = g.uniform.iter().map(|z| z.norm_sqr()).sum();
        assert!((norm - 1.0).abs() < 1e-14);
        assert!((g.uniform[5].re - 1.0 / 8f64.sqrt()).abs() < 1e-15);
        let sq = g.diffusion.matrix() * g.diffusion.matrix();
        assert!(sq.max_diff(&ComplexMatrix::identity(8)) < 1e-12);
    }

    #[test]
    fn f1_from_toffoli_family() {
        for t in 2..=4 {
            let f = f1_from_repeated_cnot(t).unwrap();
            assert!(f.matrix().max_diff(f_matrix(t, 1).unwrap().matrix()) < 1e-12);
        }
    }

    #[test]
    fn uniton_products() {
        assert_eq!(uniton_product(2, &[]).unwrap().matrix(), &ComplexMatrix::identity(4));
        let ek = GrassmannPoint::standard(8, 3);
        assert_eq!(uniton_product(3, &[ek]).unwrap(), f_matrix(3, 3).unwrap());
        assert!(uniton_product(2, &[GrassmannPoint::standard(8, 1)]).is_err());
    }

    #[test]
    fn sigma2_relation() {
        let rhs = (&sigma1() * &sigma3()).scale(Complex64::i());
        assert_eq!(sigma2(), rhs);
    }

    #[test]
    fn permutation_rejects_non_bijection() {
        assert!(permutation_gate(2, |_| 0).is_err());
    }
}
