//! Dense statevector simulation of a small reversible gate set.
//!
//! Gates: X, H, CNOT, CCNOT, multi-controlled NOT, controlled phase, plus
//! branchwise reset and measurement markers. Includes an ancilla-ladder MCT
//! decomposition, greedy gate metrics, and OpenQASM 2.0 export/import.

mod circuit;
mod error;
mod gate;
pub mod qasm;
mod state;

pub use circuit::{apply_circuit, decompose_mct, gate_metrics, Circuit, GateMetrics};
pub use error::{QasmError, SimError};
pub use gate::{GateKind, GateOp};
pub use state::{gather_bits, Amplitude, QuantumState, AMP_EPS, DEFAULT_QUBIT_LIMIT};
