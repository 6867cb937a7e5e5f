use num_complex::Complex64;
use proptest::prelude::*;
use qsim_core::{apply_circuit, decompose_mct, Circuit, GateOp, QuantumState};
use std::f64::consts::PI;

const EXACT: f64 = 1e-12;

fn random_unitary_op(qubits: usize) -> impl Strategy<Value = GateOp> {
    let q = qubits;
    prop_oneof![
        (0..q).prop_map(GateOp::x),
        (0..q).prop_map(GateOp::h),
        (0..q, 0..q)
            .prop_filter("distinct", |(c, t)| c != t)
            .prop_map(|(c, t)| GateOp::cnot(c, t)),
        (0..q, 0..q, 0..q)
            .prop_filter("distinct", |(a, b, t)| a != b && a != t && b != t)
            .prop_map(|(a, b, t)| GateOp::ccnot(a, b, t)),
        (0..q, 0..q, 0.0..2.0 * PI)
            .prop_filter("distinct", |(c, t, _)| c != t)
            .prop_map(|(c, t, theta)| GateOp::cphase(c, t, theta)),
    ]
}

proptest! {
    #[test]
    fn unitary_sequences_preserve_norm(
        ops in proptest::collection::vec(random_unitary_op(5), 0..60)
    ) {
        let mut state = QuantumState::zero(5).unwrap();
        // Spread amplitude around first so the check is not vacuous.
        for q in 0..5 {
            state.apply_gate(&GateOp::h(q)).unwrap();
        }
        for op in &ops {
            state.apply_gate(op).unwrap();
        }
        prop_assert!((state.norm_sqr() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn self_inverse_gates_twice_are_identity(
        seed_ops in proptest::collection::vec(random_unitary_op(4), 0..20),
        op in prop_oneof![
            Just(GateOp::x(0)),
            Just(GateOp::h(1)),
            Just(GateOp::cnot(0, 2)),
            Just(GateOp::ccnot(0, 1, 3)),
            Just(GateOp::mct(vec![0, 1, 2], 3)),
            Just(GateOp::cphase(1, 3, PI)),
        ]
    ) {
        let mut state = QuantumState::zero(4).unwrap();
        for q in 0..4 {
            state.apply_gate(&GateOp::h(q)).unwrap();
        }
        for prep in &seed_ops {
            state.apply_gate(prep).unwrap();
        }
        let before = state.clone();
        state.apply_gate(&op).unwrap();
        state.apply_gate(&op).unwrap();
        for idx in 0..before.amplitudes().len() {
            prop_assert!((state.amplitude(idx) - before.amplitude(idx)).norm() < EXACT);
        }
    }

    #[test]
    fn probabilities_over_all_qubits_match_amplitudes(
        ops in proptest::collection::vec(random_unitary_op(4), 0..30)
    ) {
        let mut state = QuantumState::zero(4).unwrap();
        for op in &ops {
            state.apply_gate(op).unwrap();
        }
        let probs = state.outcome_probabilities(&[0, 1, 2, 3]).unwrap();
        for (idx, p) in probs.iter().enumerate() {
            prop_assert_eq!(*p, state.amplitude(idx).norm_sqr());
        }
    }
}

#[test]
fn mct_decomposition_equivalent_for_k_3_to_6() {
    for k in 3..=6usize {
        let controls: Vec<usize> = (0..k).collect();
        let target = k;
        let ancillas: Vec<usize> = (k + 1..2 * k).collect();
        let qubits = 2 * k;
        let decomposed = decompose_mct(&controls, target, &ancillas).unwrap();

        for pattern in 0..(1usize << k) {
            let mut via_ladder = QuantumState::basis(qubits, pattern).unwrap();
            apply_circuit(&mut via_ladder, &decomposed).unwrap();

            let mut direct = QuantumState::basis(qubits, pattern).unwrap();
            direct
                .apply_gate(&GateOp::mct(controls.clone(), target))
                .unwrap();

            for idx in 0..via_ladder.amplitudes().len() {
                let diff = (via_ladder.amplitude(idx) - direct.amplitude(idx)).norm();
                assert!(diff < EXACT, "k={k} pattern={pattern:b} index={idx}");
            }
            // Every ancilla is back at zero: no amplitude on indices with
            // an ancilla bit set.
            for idx in 0..via_ladder.amplitudes().len() {
                let anc_bits = ancillas.iter().fold(0usize, |m, &a| m | (1 << a));
                if idx & anc_bits != 0 {
                    assert!(via_ladder.amplitude(idx).norm() < EXACT);
                }
            }
        }
    }
}

#[test]
fn reset_is_idempotent_and_norm_preserving() {
    // Entangle qubit 2 with qubit 0 so its value is branch-determined.
    let mut state = QuantumState::zero(3).unwrap();
    state.apply_gate(&GateOp::h(0)).unwrap();
    state.apply_gate(&GateOp::cnot(0, 2)).unwrap();
    let norm_before = state.norm_sqr();
    state.branchwise_reset(2).unwrap();
    let once = state.clone();
    assert_eq!(state.norm_sqr(), norm_before);
    state.branchwise_reset(2).unwrap();
    assert_eq!(state, once);
}

#[test]
fn apply_circuit_dispatches_reset() {
    let mut circuit = Circuit::new(2);
    circuit.push(GateOp::h(0));
    circuit.push(GateOp::cnot(0, 1));
    circuit.push(GateOp::reset(1));
    let mut state = QuantumState::zero(2).unwrap();
    apply_circuit(&mut state, &circuit).unwrap();
    // Bell pair with qubit 1 reset: uniform over |00>, |01>.
    assert!((state.amplitude(0b00).norm_sqr() - 0.5).abs() < EXACT);
    assert!((state.amplitude(0b01).norm_sqr() - 0.5).abs() < EXACT);
    assert!(state.amplitude(0b10).norm() < EXACT);
    assert!(state.amplitude(0b11).norm() < EXACT);
}

#[test]
fn deposition_fragment_steps_box_from_0_to_8() {
    // The d=4 cascade controlled on an enabled flag qubit: CCNOT chain from
    // the low end of the box upward, then a CNOT on the head bit. Box bits
    // live on qubits 1..=4 with qubit 1 the most significant.
    let flag = 0usize;
    let box_q = [1usize, 2, 3, 4];
    let mut circuit = Circuit::new(5);
    for m in (0..3).rev() {
        circuit.push(GateOp::ccnot(flag, box_q[m], box_q[m + 1]));
    }
    circuit.push(GateOp::cnot(flag, box_q[0]));

    let mut state = QuantumState::basis(5, 0b00001).unwrap(); // flag set, box 0000
    apply_circuit(&mut state, &circuit).unwrap();
    // Box value 8 = head bit set: qubit 1.
    let expected = 0b00011usize;
    assert!((state.amplitude(expected).norm_sqr() - 1.0).abs() < EXACT);
}

#[test]
fn from_amplitudes_rejects_non_power_of_two() {
    let v = Complex64::new(1.0, 0.0);
    assert!(QuantumState::from_amplitudes(vec![v]).is_err());
    assert!(QuantumState::from_amplitudes(vec![v; 3]).is_err());
}
