//! The iteration driver: initialize, step the guarded update, extract the
//! per-path trace, then mark and amplify the converged branch.

use qsim_core::{
    apply_circuit, gate_metrics, Circuit, GateMetrics, QuantumState, AMP_EPS, DEFAULT_QUBIT_LIMIT,
};

use crate::error::EngineError;
use crate::fragments::{init_circuit, iteration_circuit, marking_circuit, measure_paths_circuit};
use crate::instance::{EngineModes, ProblemInstance, StopRule, Weight};
use crate::layout::RegisterLayout;
use crate::trace::{IterationTrace, TraceRow};

/// Prepare the register layout and the uniform path superposition.
pub fn init_ant(instance: &ProblemInstance) -> Result<(QuantumState, RegisterLayout), EngineError> {
    let layout = RegisterLayout::for_instance(instance);
    if layout.total_qubits() > DEFAULT_QUBIT_LIMIT {
        return Err(EngineError::Sim(qsim_core::SimError::QubitLimitExceeded {
            requested: layout.total_qubits(),
            limit: DEFAULT_QUBIT_LIMIT,
        }));
    }
    let mut state = QuantumState::zero(layout.total_qubits())?;
    apply_circuit(&mut state, &init_circuit(&layout))?;
    Ok((state, layout))
}

/// Apply one iteration's circuit to the state in place.
pub fn ant_execute(
    state: &mut QuantumState,
    t: u64,
    instance: &ProblemInstance,
    layout: &RegisterLayout,
) -> Result<(), EngineError> {
    apply_circuit(state, &iteration_circuit(t, instance, layout))?;
    Ok(())
}

/// Mark full-box branches and run the diffusion operators in place.
pub fn mark_and_amplify(
    state: &mut QuantumState,
    layout: &RegisterLayout,
    modes: &EngineModes,
) -> Result<(), EngineError> {
    apply_circuit(state, &marking_circuit(layout, modes))?;
    Ok(())
}

/// The box value carried by one path's branch, if that branch holds exactly
/// one nonzero component.
pub fn branch_box_value(
    state: &QuantumState,
    layout: &RegisterLayout,
    path_id: usize,
) -> Option<u64> {
    let mut found: Option<usize> = None;
    for (idx, amp) in state.amplitudes().iter().enumerate() {
        if amp.norm() <= AMP_EPS || layout.path_of_index(idx) != path_id {
            continue;
        }
        match found {
            None => found = Some(idx),
            Some(prev) if prev != idx => return None,
            Some(_) => {}
        }
    }
    found.map(|idx| layout.box_value_of_index(idx))
}

/// Read every traced path's box value out of a post-iteration state.
///
/// Each path index must appear in exactly one nonzero component whose
/// magnitude is the uniform `1/sqrt(2^x)`; anything else means the circuits
/// corrupted the per-path correlation.
pub fn extract_trace(
    state: &QuantumState,
    layout: &RegisterLayout,
    instance: &ProblemInstance,
    t: u64,
) -> Result<Vec<TraceRow>, EngineError> {
    let slots = instance.path_slots();
    let mut branch_index: Vec<Option<usize>> = vec![None; slots];
    let expected = 1.0 / (slots as f64).sqrt();

    for (idx, amp) in state.amplitudes().iter().enumerate() {
        let magnitude = amp.norm();
        if magnitude <= AMP_EPS {
            continue;
        }
        let path_id = layout.path_of_index(idx);
        if let Some(prev) = branch_index[path_id] {
            if prev != idx {
                return Err(EngineError::AmbiguousBoxValue {
                    path_id,
                    iteration: t as usize,
                });
            }
        } else {
            branch_index[path_id] = Some(idx);
        }
        if (magnitude - expected).abs() > 1e-9 {
            return Err(EngineError::BadBranchAmplitude {
                path_id,
                iteration: t as usize,
                amplitude: magnitude,
                expected,
            });
        }
    }

    let mut rows = Vec::new();
    for path_id in instance.traced_paths() {
        let idx = branch_index[path_id].ok_or(EngineError::AmbiguousBoxValue {
            path_id,
            iteration: t as usize,
        })?;
        rows.push(TraceRow::new(
            t,
            path_id,
            layout.box_value_of_index(idx),
            layout.box_qubit_count(),
        ));
    }
    Ok(rows)
}

/// Everything a finished run reports.
#[derive(Debug, Clone)]
pub struct RunResult {
    pub converged_path: Option<usize>,
    pub convergence_iteration: Option<u64>,
    /// Probability per path pattern, indexed by path id.
    pub histogram: Vec<f64>,
    pub trace: IterationTrace,
    pub metrics: GateMetrics,
    pub iterations_executed: u64,
    /// The executed program: init, iterations, marking, measurement.
    pub program: Circuit,
    /// Post-amplification state, for sampling.
    pub final_state: QuantumState,
}

impl RunResult {
    /// Pattern with maximal probability. Probabilities within 1e-12 of the
    /// maximum are indistinguishable at simulation precision and count as
    /// tied; among tied patterns the highest one is reported, matching the
    /// standard max over an ascending scan.
    pub fn argmax_pattern(&self) -> usize {
        argmax_with_tolerance(&self.histogram)
    }
}

pub(crate) fn argmax_with_tolerance(probabilities: &[f64]) -> usize {
    let max = probabilities.iter().copied().fold(f64::MIN, f64::max);
    probabilities
        .iter()
        .rposition(|&p| p >= max - 1e-12)
        .unwrap_or(0)
}

/// Stateful driver, stepping one iteration at a time. Weights may be edited
/// between steps; the next selection uses the new values.
pub struct QacoEngine {
    instance: ProblemInstance,
    layout: RegisterLayout,
    state: QuantumState,
    trace: IterationTrace,
    program: Circuit,
    t: u64,
    halted_on: Option<(usize, u64)>,
}

impl QacoEngine {
    pub fn new(instance: ProblemInstance) -> Result<Self, EngineError> {
        let (state, layout) = init_ant(&instance)?;
        let mut trace = IterationTrace::new();
        trace.extend(extract_trace(&state, &layout, &instance, 0)?);
        let program = init_circuit(&layout);
        Ok(QacoEngine {
            instance,
            layout,
            state,
            trace,
            program,
            t: 0,
            halted_on: None,
        })
    }

    pub fn layout(&self) -> &RegisterLayout {
        &self.layout
    }

    pub fn state(&self) -> &QuantumState {
        &self.state
    }

    pub fn instance(&self) -> &ProblemInstance {
        &self.instance
    }

    pub fn trace(&self) -> &IterationTrace {
        &self.trace
    }

    pub fn iteration(&self) -> u64 {
        self.t
    }

    pub fn set_weight(&mut self, path_id: usize, weight: Weight) -> Result<(), EngineError> {
        self.instance.set_weight(path_id, weight)
    }

    /// Run one iteration and record its trace rows.
    pub fn step(&mut self) -> Result<(), EngineError> {
        self.t += 1;
        let circuit = iteration_circuit(self.t, &self.instance, &self.layout);
        apply_circuit(&mut self.state, &circuit)?;
        self.program.extend_with(&circuit);
        self.trace.extend(extract_trace(
            &self.state,
            &self.layout,
            &self.instance,
            self.t,
        )?);
        if self.halted_on.is_none() {
            let full = self
                .trace
                .full_paths_at(self.t, self.layout.box_qubit_count());
            if full.len() == 1 {
                self.halted_on = Some((full[0], self.t));
            }
        }
        Ok(())
    }

    /// Iterate up to the budget, honoring the stop rule.
    pub fn run_iterations(&mut self) -> Result<(), EngineError> {
        while self.t < self.instance.iterations {
            self.step()?;
            if self.instance.modes.stop == StopRule::FirstFull && self.halted_on.is_some() {
                break;
            }
        }
        Ok(())
    }

    /// Mark, amplify, and assemble the result.
    pub fn finish(mut self) -> Result<RunResult, EngineError> {
        let marking = marking_circuit(&self.layout, &self.instance.modes);
        apply_circuit(&mut self.state, &marking)?;
        self.program.extend_with(&marking);
        self.program
            .extend_with(&measure_paths_circuit(&self.layout));

        let histogram = self
            .state
            .outcome_probabilities(&self.layout.path_qubits())?;

        // First iteration at which exactly one box was full, under either
        // stop rule. Simultaneous fills leave it unset: every full path is
        // visible in the trace and no winner is invented.
        let (converged_path, convergence_iteration) = self.halted_on.unzip();

        Ok(RunResult {
            converged_path,
            convergence_iteration,
            histogram,
            trace: self.trace,
            metrics: gate_metrics(&self.program),
            iterations_executed: self.t,
            program: self.program,
            final_state: self.state,
        })
    }

    /// The whole program executed so far, including init and any marking
    /// already applied.
    pub fn program(&self) -> &Circuit {
        &self.program
    }
}

/// End-to-end run: initialize, iterate under the stop rule, mark, amplify,
/// and report.
pub fn run_qaco(instance: &ProblemInstance) -> Result<RunResult, EngineError> {
    let mut engine = QacoEngine::new(instance.clone())?;
    engine.run_iterations()?;
    engine.finish()
}
