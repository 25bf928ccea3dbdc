use grassvol::gates::cnot;
use grassvol::linalg::{is_unitary, ComplexMatrix};
use grassvol::random::{haar_unitary, stream_rng};
use grassvol::synth::{
    controlled_unitary, gate_count_table, mod2_identity_check, simulate, synthesize_ccu,
    synthesize_cccu, unitary_root, Gate, QuantumCircuit,
};
use grassvol::Complex64;

#[test]
fn parity_identities_hold() {
    assert!(mod2_identity_check(2).unwrap());
    assert!(mod2_identity_check(3).unwrap());
    assert!(mod2_identity_check(4).is_err());
}

#[test]
fn roots_of_random_unitaries() {
    let mut rng = stream_rng(7, 0);
    for _ in 0..100 {
        let u = haar_unitary(&mut rng, 2);
        for d in [2u32, 4] {
            let v = unitary_root(&u, d).unwrap();
            assert!(is_unitary(&v, 1e-12));
            assert!(v.pow(d).max_diff(&u) <= 1e-12);
        }
    }
}

#[test]
fn root_of_minus_identity_and_pauli_x() {
    let minus = ComplexMatrix::identity(2).scale_real(-1.0);
    assert!(unitary_root(&minus, 2).unwrap().pow(2).max_diff(&minus) <= 1e-12);
    let x = grassvol::linalg::pauli::sigma1();
    assert!(unitary_root(&x, 4).unwrap().pow(4).max_diff(&x) <= 1e-12);
}

#[test]
fn fifty_random_two_and_three_control_syntheses() {
    let mut rng = stream_rng(8, 0);
    for _ in 0..50 {
        let u = haar_unitary(&mut rng, 2);
        let two = synthesize_ccu(&u).unwrap();
        assert!(two.max_error <= 1e-12, "C²-U error {}", two.max_error);
        assert_eq!(two.gate_count, 5);
        let three = synthesize_cccu(&u).unwrap();
        assert!(three.max_error <= 1e-12, "C³-U error {}", three.max_error);
        assert_eq!(three.gate_count, 17);
    }
}

#[test]
fn toffoli_family_is_an_exact_permutation_up_to_rounding() {
    let x = grassvol::linalg::pauli::sigma1();
    let r = synthesize_cccu(&x).unwrap();
    let m = simulate(&r.circuit).unwrap();
    for i in 0..16 {
        let expected = if i >= 14 { i ^ 1 } else { i };
        for j in 0..16 {
            let want = if j == expected { 1.0 } else { 0.0 };
            assert!((m.matrix()[(j, i)] - Complex64::new(want, 0.0)).norm() <= 1e-12);
        }
    }
}

#[test]
fn simulate_applies_gates_in_listed_order() {
    let mut rng = stream_rng(9, 0);
    let u = haar_unitary(&mut rng, 2);
    let a = QuantumCircuit::new(2, vec![Gate::cu(1, 2, u.clone())]).unwrap();
    let b = QuantumCircuit::new(2, vec![Gate::cnot(2, 1)]).unwrap();
    let ab = a.then(&b).unwrap();
    let expected = simulate(&b).unwrap().matrix() * simulate(&a).unwrap().matrix();
    assert!(simulate(&ab).unwrap().matrix().max_diff(&expected) <= 1e-14);
    assert_eq!(simulate(&b).unwrap().matrix(), cnot(2, 2, 1).unwrap().matrix());
    let direct = controlled_unitary(2, &[1], 2, &u).unwrap();
    assert!(simulate(&a).unwrap().matrix().max_diff(direct.matrix()) <= 1e-15);
}

#[test]
fn exponent_bookkeeping_on_basis_states() {
    // each control pattern must see V raised to 4·xyz
    let mut rng = stream_rng(10, 0);
    let u = haar_unitary(&mut rng, 2);
    let m = simulate(&synthesize_cccu(&u).unwrap().circuit).unwrap();
    let id = ComplexMatrix::identity(2);
    for ctl in 0..8usize {
        let block = m.matrix().submatrix(2 * ctl, 2 * ctl, 2, 2);
        let expected = if ctl == 7 { &u } else { &id };
        assert!(block.max_diff(expected) <= 1e-12, "controls {ctl:03b}");
    }
}

#[test]
fn invalid_circuits_are_rejected() {
    assert!(QuantumCircuit::new(3, vec![Gate::cnot(2, 2)]).is_err());
    assert!(QuantumCircuit::new(3, vec![Gate::cnot(1, 4)]).is_err());
    let not_unitary = ComplexMatrix::from_real(2, 2, &[1.0, 1.0, 0.0, 1.0]).unwrap();
    assert!(QuantumCircuit::new(2, vec![Gate::cu(1, 2, not_unitary.clone())]).is_err());
    assert!(unitary_root(&not_unitary, 2).is_err());
}

#[test]
fn gate_counts() {
    let t = gate_count_table(3).unwrap();
    assert_eq!((t[0].controlled_singles, t[0].cnots, t[0].total), (3, 2, 5));
    assert_eq!((t[1].controlled_singles, t[1].cnots, t[1].total), (7, 10, 17));
    assert!(gate_count_table(4).is_err());
}
