//! Pure-integer twin of the quantum iteration: one box automaton per path,
//! stepping through the same guard logic the circuits implement. Used to
//! verify every extracted trace independently of the statevector path.

use crate::fragments::{deposit_step, evaporate_step};
use crate::instance::{GuardMode, ProblemInstance};
use crate::trace::{IterationTrace, TraceRow};

/// Per-path box automaton mirroring the gate-level update exactly,
/// anomaly for anomaly.
#[derive(Debug, Clone)]
pub struct ClassicalBoxOracle {
    instance: ProblemInstance,
    boxes: Vec<u64>,
    t: u64,
}

impl ClassicalBoxOracle {
    pub fn new(instance: ProblemInstance) -> Self {
        let boxes = vec![0u64; instance.path_slots()];
        ClassicalBoxOracle {
            instance,
            boxes,
            t: 0,
        }
    }

    pub fn instance_mut(&mut self) -> &mut ProblemInstance {
        &mut self.instance
    }

    pub fn boxes(&self) -> &[u64] {
        &self.boxes
    }

    pub fn iteration(&self) -> u64 {
        self.t
    }

    /// Advance every path's box through one iteration.
    pub fn step(&mut self) {
        self.t += 1;
        let t = self.t;
        let d = self.instance.box_qubits;
        let full = (1u64 << d) - 1;
        let include_evaporation = self.instance.modes.evaporation.includes(t);
        let guard = self.instance.modes.guard;

        for path_id in 0..self.instance.path_slots() {
            let selected = self
                .instance
                .weight(path_id)
                .finite()
                .is_some_and(|w| t.is_multiple_of(w));
            let b = &mut self.boxes[path_id];
            // Post-selector flags: deposit on selected, evaporate on the rest.
            let mut dep = selected;
            let mut evap = !selected;
            match guard {
                GuardMode::Verbatim => {
                    if *b == full {
                        dep = !dep;
                    }
                    if dep {
                        *b = deposit_step(*b, d);
                    }
                    if include_evaporation {
                        if *b == full {
                            evap = !evap;
                        }
                        if *b == 0 {
                            evap = !evap;
                        }
                        if evap {
                            *b = evaporate_step(*b, d);
                        }
                    }
                }
                GuardMode::Corrected => {
                    let full_before = *b == full;
                    if full_before && selected {
                        dep = false;
                    }
                    if dep {
                        *b = deposit_step(*b, d);
                    }
                    if include_evaporation {
                        if full_before && !selected {
                            evap = !evap;
                        }
                        if *b == 0 {
                            evap = !evap;
                        }
                        if evap {
                            *b = evaporate_step(*b, d);
                        }
                    }
                }
            }
        }
    }

    /// Trace rows for the current iteration, one per traced path.
    pub fn trace_rows(&self) -> Vec<TraceRow> {
        let d = self.instance.box_qubits;
        self.instance
            .traced_paths()
            .into_iter()
            .map(|path_id| TraceRow::new(self.t, path_id, self.boxes[path_id], d))
            .collect()
    }
}

/// Recompute the full trace classically for iterations 0..=t_max.
pub fn classical_box_oracle(instance: &ProblemInstance, t_max: u64) -> IterationTrace {
    let mut oracle = ClassicalBoxOracle::new(instance.clone());
    let mut trace = IterationTrace::new();
    trace.extend(oracle.trace_rows());
    for _ in 0..t_max {
        oracle.step();
        trace.extend(oracle.trace_rows());
    }
    trace
}
