//! Quantum ant colony optimizer on a dense statevector.
//!
//! Paths live in uniform superposition; a shared pheromone box register,
//! entangled with the path index, advances through a fixed state order on
//! deposition and regresses on evaporation. Cheaper paths are selected more
//! often (`t mod W = 0`), so the cheapest path's box fills first; its branch
//! is then phase-marked and amplified before measurement.

mod engine;
mod error;
pub mod fragments;
mod instance;
mod layout;
mod oracle;
mod trace;

pub use engine::{
    ant_execute, branch_box_value, extract_trace, init_ant, mark_and_amplify, run_qaco, QacoEngine,
    RunResult,
};
pub use error::EngineError;
pub use fragments::{box_order, deposits_to_full};
pub use instance::{
    select_paths, EngineModes, EvaporationPolicy, GuardMode, MarkingMode, ProblemInstance,
    StopRule, Weight,
};
pub use layout::RegisterLayout;
pub use oracle::{classical_box_oracle, ClassicalBoxOracle};
pub use trace::{IterationTrace, TraceRow};

/// Weights of the 8-path example instance.
pub const EXAMPLE_WEIGHTS_8: [u64; 8] = [21, 18, 16, 11, 5, 2, 11, 14];

/// Weights of the 16-path example instance.
pub const EXAMPLE_WEIGHTS_16: [u64; 16] = [
    12, 9, 24, 131, 17, 99, 11, 100, 24, 31, 64, 79, 73, 6, 67, 101,
];
