//! Controlled-controlled(-controlled) U from singly-controlled roots of U.
//!
//! Over Z₂, `x + y − x⊕y = 2xy` and
//! `x + y + z − x⊕y − x⊕z − y⊕z + x⊕y⊕z = 4xyz`. Reading each term as a
//! controlled `V` or `V†` on the target, with the parities prepared by
//! C-NOTs, gives `V^{2xy} = U^{xy}` for `V² = U` and `V^{4xyz} = U^{xyz}`
//! for `V⁴ = U`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gates::{check_wires, GateMatrix};
use crate::linalg::{hermitian_eigen, unitarity_deviation, ComplexMatrix, Tolerances};

/// `x + y − x⊕y = 2xy` over Z₂² (order 2) or the three-variable identity
/// equal to `4xyz` over Z₂³ (order 3).
pub fn mod2_identity_check(order: u8) -> Result<bool> {
    match order {
        2 => Ok((0..4u8).all(|m| {
            let (x, y) = ((m >> 1) as i32, (m & 1) as i32);
            x + y - (x ^ y) == 2 * x * y
        })),
        3 => Ok((0..8u8).all(|m| {
            let (x, y, z) = (((m >> 2) & 1) as i32, ((m >> 1) & 1) as i32, (m & 1) as i32);
            x + y + z - (x ^ y) - (x ^ z) - (y ^ z) + (x ^ y ^ z) == 4 * x * y * z
        })),
        _ => Err(Error::InvalidArgument(format!("identity order must be 2 or 3, got {order}"))),
    }
}

/// Principal `degree`-th root of a unitary: eigenphases taken in `(−π, π]`
/// and divided by `degree`.
pub fn unitary_root(u: &ComplexMatrix, degree: u32) -> Result<ComplexMatrix> {
    let tols = Tolerances::default();
    if degree == 0 {
        return Err(Error::InvalidArgument("root degree must be ≥ 1".into()));
    }
    let deviation = unitarity_deviation(u);
    if deviation > tols.predicate {
        return Err(Error::NotUnitary { deviation });
    }
    let n = u.rows();
    let anti = (u - &u.adjoint()).scale(Complex64::new(0.0, -0.5));
    let herm = (u + &u.adjoint()).scale_real(0.5);
    // A normal u commutes with any real combination of its Hermitian and
    // skew parts; a generic weight separates its distinct eigenvalues.
    for alpha in [0.618_033_988_749_895, 1.324_717_957_244_746, 2.35, 0.1] {
        let h = &herm + &anti.scale_real(alpha);
        let eig = hermitian_eigen(&h, tols.linalg)?;
        let v = &eig.eigenvectors;
        let d = &(&v.adjoint() * u) * v;
        let off = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| d[(i, j)].norm())
            .fold(0.0, f64::max);
        if off > 1e-12 {
            continue;
        }
        let roots: Vec<Complex64> = (0..n)
            .map(|i| {
                let mut theta = d[(i, i)].arg();
                if theta <= -std::f64::consts::PI + 1e-12 {
                    theta += 2.0 * std::f64::consts::PI;
                }
                Complex64::from_polar(1.0, theta / degree as f64)
            })
            .collect();
        return Ok(&(v * &ComplexMatrix::from_diag(&roots)) * &v.adjoint());
    }
    Err(Error::NoConvergence { sweeps: 0 })
}

/// One element of a circuit. Wires are 1-based, wire 1 most significant.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Gate {
    /// Applies `u` to `target` iff `control` is 1.
    #[serde(rename = "cu")]
    ControlledSingle {
        control: usize,
        target: usize,
        u: ComplexMatrix,
    },
    #[serde(rename = "cnot")]
    WireCnot { control: usize, target: usize },
}

impl Gate {
    pub fn cu(control: usize, target: usize, u: ComplexMatrix) -> Self {
        Gate::ControlledSingle { control, target, u }
    }

    pub fn cnot(control: usize, target: usize) -> Self {
        Gate::WireCnot { control, target }
    }

    fn wires(&self) -> (usize, usize) {
        match self {
            Gate::ControlledSingle { control, target, .. } | Gate::WireCnot { control, target } => {
                (*control, *target)
            }
        }
    }

    fn target_matrix(&self) -> ComplexMatrix {
        match self {
            Gate::ControlledSingle { u, .. } => u.clone(),
            Gate::WireCnot { .. } => crate::linalg::pauli::sigma1(),
        }
    }
}

/// Gates in temporal order: `gates[0]` acts first.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuantumCircuit {
    pub t: usize,
    pub gates: Vec<Gate>,
}

impl QuantumCircuit {
    pub fn new(t: usize, gates: Vec<Gate>) -> Result<Self> {
        let c = Self { t, gates };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        let tol = Tolerances::default().predicate;
        for g in &self.gates {
            let (control, target) = g.wires();
            check_wires(self.t, control, target)?;
            if let Gate::ControlledSingle { u, .. } = g {
                if u.shape() != (2, 2) {
                    return Err(Error::DimensionMismatch(format!(
                        "controlled gate must be 2x2, got {}x{}",
                        u.rows(),
                        u.cols()
                    )));
                }
                let deviation = unitarity_deviation(u);
                if deviation > tol {
                    return Err(Error::NotUnitary { deviation });
                }
            }
        }
        Ok(())
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &QuantumCircuit) -> Result<QuantumCircuit> {
        if self.t != other.t {
            return Err(Error::DimensionMismatch("circuits on different wire counts".into()));
        }
        let mut gates = self.gates.clone();
        gates.extend(other.gates.iter().cloned());
        Ok(QuantumCircuit { t: self.t, gates })
    }

    pub fn gate_count(&self) -> usize {
        self.gates.len()
    }
}

/// Left-multiplies `acc` by the embedding of one controlled single-target gate.
fn apply_controlled(acc: &mut ComplexMatrix, t: usize, control: usize, target: usize, u: &ComplexMatrix) {
    let n = 1usize << t;
    let cbit = 1usize << (t - control);
    let tbit = 1usize << (t - target);
    let cols = acc.cols();
    for r0 in 0..n {
        if r0 & cbit == 0 || r0 & tbit != 0 {
            continue;
        }
        let r1 = r0 | tbit;
        for c in 0..cols {
            let (a0, a1) = (acc[(r0, c)], acc[(r1, c)]);
            acc[(r0, c)] = u[(0, 0)] * a0 + u[(0, 1)] * a1;
            acc[(r1, c)] = u[(1, 0)] * a0 + u[(1, 1)] * a1;
        }
    }
}

/// The operator of the circuit: `G_last ⋯ G_first`.
pub fn simulate(c: &QuantumCircuit) -> Result<GateMatrix> {
    c.validate()?;
    let mut acc = ComplexMatrix::identity(1 << c.t);
    for g in &c.gates {
        let (control, target) = g.wires();
        apply_controlled(&mut acc, c.t, control, target, &g.target_matrix());
    }
    GateMatrix::new(c.t, acc, Tolerances::default().predicate)
}

/// Identity except `u` on `target` when every control wire is 1.
pub fn controlled_unitary(
    t: usize,
    controls: &[usize],
    target: usize,
    u: &ComplexMatrix,
) -> Result<GateMatrix> {
    for &c in controls {
        check_wires(t, c, target)?;
    }
    let mask: usize = controls.iter().map(|&c| 1usize << (t - c)).sum();
    let tbit = 1usize << (t - target);
    let n = 1usize << t;
    let mut m = ComplexMatrix::identity(n);
    for r0 in (0..n).filter(|&r| r & mask == mask && r & tbit == 0) {
        let r1 = r0 | tbit;
        m[(r0, r0)] = u[(0, 0)];
        m[(r0, r1)] = u[(0, 1)];
        m[(r1, r0)] = u[(1, 0)];
        m[(r1, r1)] = u[(1, 1)];
    }
    GateMatrix::new(t, m, Tolerances::default().predicate)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SynthesisReport {
    pub circuit: QuantumCircuit,
    /// The directly assembled controlled-U.
    pub reference: GateMatrix,
    /// `‖simulate(circuit) − reference‖_max`.
    pub max_error: f64,
    pub gate_count: usize,
}

fn report(circuit: QuantumCircuit, controls: &[usize], u: &ComplexMatrix) -> Result<SynthesisReport> {
    let target = circuit.t;
    let reference = controlled_unitary(circuit.t, controls, target, u)?;
    let max_error = simulate(&circuit)?.matrix().max_diff(reference.matrix());
    let gate_count = circuit.gate_count();
    Ok(SynthesisReport {
        circuit,
        reference,
        max_error,
        gate_count,
    })
}

/// Five-gate C²-U on wires (x, y, z) = (1, 2, 3) from `V² = u`.
pub fn synthesize_ccu(u: &ComplexMatrix) -> Result<SynthesisReport> {
    let v = unitary_root(u, 2)?;
    let vd = v.adjoint();
    let circuit = QuantumCircuit::new(
        3,
        vec![
            Gate::cu(1, 3, v.clone()),
            Gate::cu(2, 3, v),
            Gate::cnot(1, 2),
            Gate::cu(2, 3, vd),
            Gate::cnot(1, 2),
        ],
    )?;
    report(circuit, &[1, 2], u)
}

/// Seventeen-gate C³-U on wires (x, y, z, w) = (1, 2, 3, 4) from `V⁴ = u`.
pub fn synthesize_cccu(u: &ComplexMatrix) -> Result<SynthesisReport> {
    let v = unitary_root(u, 4)?;
    let vd = v.adjoint();
    let circuit = QuantumCircuit::new(
        4,
        vec![
            Gate::cu(1, 4, v.clone()),
            Gate::cu(2, 4, v.clone()),
            Gate::cu(3, 4, v.clone()),
            // x⊕y
            Gate::cnot(1, 2),
            Gate::cu(2, 4, vd.clone()),
            Gate::cnot(1, 2),
            // x⊕z
            Gate::cnot(1, 3),
            Gate::cu(3, 4, vd.clone()),
            Gate::cnot(1, 3),
            // y⊕z
            Gate::cnot(2, 3),
            Gate::cu(3, 4, vd),
            Gate::cnot(2, 3),
            // x⊕y⊕z
            Gate::cnot(1, 2),
            Gate::cnot(2, 3),
            Gate::cu(3, 4, v),
            Gate::cnot(2, 3),
            Gate::cnot(1, 2),
        ],
    )?;
    report(circuit, &[1, 2, 3], u)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GateCount {
    pub controls: usize,
    /// One controlled `V` or `V†` per non-empty subset of the controls.
    pub controlled_singles: usize,
    pub cnots: usize,
    pub total: usize,
}

/// Gate counts of the implemented constructions for 2 and 3 controls.
pub fn gate_count_table(max_controls: usize) -> Result<Vec<GateCount>> {
    if !(2..=3).contains(&max_controls) {
        return Err(Error::InvalidArgument(format!(
            "constructions exist for 2 or 3 controls, got {max_controls}"
        )));
    }
    let id = ComplexMatrix::identity(2);
    let mut rows = Vec::new();
    for controls in 2..=max_controls {
        let circuit = if controls == 2 {
            synthesize_ccu(&id)?.circuit
        } else {
            synthesize_cccu(&id)?.circuit
        };
        let controlled_singles = circuit
            .gates
            .iter()
            .filter(|g| matches!(g, Gate::ControlledSingle { .. }))
            .count();
        debug_assert_eq!(controlled_singles, (1 << controls) - 1);
        rows.push(GateCount {
            controls,
            controlled_singles,
            cnots: circuit.gate_count() - controlled_singles,
            total: circuit.gate_count(),
        });
    }
    Ok(rows)
}
