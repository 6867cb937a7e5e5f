use std::collections::BTreeMap;

use crate::error::SimError;
use crate::gate::{GateKind, GateOp};
use crate::state::QuantumState;

/// An ordered reversible-gate program over a fixed qubit count.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Circuit {
    pub qubit_count: usize,
    pub ops: Vec<GateOp>,
}

impl Circuit {
    pub fn new(qubit_count: usize) -> Self {
        Circuit {
            qubit_count,
            ops: Vec::new(),
        }
    }

    pub fn push(&mut self, op: GateOp) {
        self.ops.push(op);
    }

    pub fn extend_with(&mut self, other: &Circuit) {
        debug_assert!(other.qubit_count <= self.qubit_count);
        self.ops.extend_from_slice(&other.ops);
    }

    pub fn validate(&self) -> Result<(), SimError> {
        for op in &self.ops {
            op.validate(self.qubit_count)?;
        }
        Ok(())
    }

    /// Qubits measured by this circuit, in order of their `Measure` ops.
    pub fn measured_qubits(&self) -> Vec<usize> {
        self.ops
            .iter()
            .filter(|op| op.kind == GateKind::Measure)
            .map(|op| op.target)
            .collect()
    }
}

/// Apply every op in order. `Reset` dispatches to the branchwise reset;
/// `Measure` leaves the state untouched (it only marks readout qubits).
pub fn apply_circuit(state: &mut QuantumState, circuit: &Circuit) -> Result<(), SimError> {
    if circuit.qubit_count != state.qubit_count() {
        return Err(SimError::QubitCountMismatch {
            expected: circuit.qubit_count,
            got: state.qubit_count(),
        });
    }
    for op in &circuit.ops {
        match op.kind {
            GateKind::Reset => state.branchwise_reset(op.target)?,
            GateKind::Measure => {}
            _ => state.apply_gate(op)?,
        }
    }
    Ok(())
}

/// Gate counts and greedy depth for a circuit.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GateMetrics {
    pub counts: BTreeMap<GateKind, usize>,
    pub total_gates: usize,
    pub depth: usize,
}

impl GateMetrics {
    pub fn count(&self, kind: GateKind) -> usize {
        self.counts.get(&kind).copied().unwrap_or(0)
    }
}

/// Exact per-kind counts plus depth under greedy layering: two ops share a
/// layer iff their qubit sets are disjoint.
pub fn gate_metrics(circuit: &Circuit) -> GateMetrics {
    let mut counts = BTreeMap::new();
    let mut frontier = vec![0usize; circuit.qubit_count];
    let mut depth = 0usize;
    for op in &circuit.ops {
        *counts.entry(op.kind).or_insert(0) += 1;
        let layer = 1 + op.qubits().map(|q| frontier[q]).max().unwrap_or(0);
        for q in op.qubits() {
            frontier[q] = layer;
        }
        depth = depth.max(layer);
    }
    GateMetrics {
        counts,
        total_gates: circuit.ops.len(),
        depth,
    }
}

/// Decompose a multi-controlled NOT into CCNOT/CNOT via the ancilla ladder:
/// AND the controls pairwise into ancillas, copy onto the target with a
/// CNOT, then uncompute the ladder so every ancilla returns to 0.
pub fn decompose_mct(
    controls: &[usize],
    target: usize,
    ancillas: &[usize],
) -> Result<Circuit, SimError> {
    if controls.is_empty() {
        return Err(SimError::EmptyControls);
    }
    let mut all: Vec<usize> = controls.to_vec();
    all.push(target);
    all.extend_from_slice(ancillas);
    let top = all.iter().copied().max().unwrap_or(0);
    let mut seen = vec![false; top + 1];
    for &q in &all {
        if seen[q] {
            return Err(SimError::DuplicateQubit { index: q });
        }
        seen[q] = true;
    }

    let k = controls.len();
    let mut circuit = Circuit::new(top + 1);
    match k {
        1 => circuit.push(GateOp::cnot(controls[0], target)),
        2 => circuit.push(GateOp::ccnot(controls[0], controls[1], target)),
        _ => {
            let needed = k - 1;
            if ancillas.len() < needed {
                return Err(SimError::InsufficientAncillas {
                    controls: k,
                    needed,
                    got: ancillas.len(),
                });
            }
            let anc = &ancillas[..needed];
            let mut ladder = Vec::with_capacity(needed);
            ladder.push(GateOp::ccnot(controls[0], controls[1], anc[0]));
            for i in 2..k {
                ladder.push(GateOp::ccnot(controls[i], anc[i - 2], anc[i - 1]));
            }
            for op in &ladder {
                circuit.push(op.clone());
            }
            circuit.push(GateOp::cnot(anc[needed - 1], target));
            for op in ladder.iter().rev() {
                circuit.push(op.clone());
            }
        }
    }
    Ok(circuit)
}
