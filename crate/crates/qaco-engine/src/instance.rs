use std::fmt;

use crate::error::EngineError;

/// A path weight; `Infinite` marks removed or padding paths that are never
/// selected.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Weight {
    Finite(u64),
    Infinite,
}

impl Weight {
    pub fn finite(self) -> Option<u64> {
        match self {
            Weight::Finite(w) => Some(w),
            Weight::Infinite => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Weight::Finite(_))
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Weight::Finite(w) => write!(f, "{w}"),
            Weight::Infinite => write!(f, "inf"),
        }
    }
}

/// When the evaporation half of the pheromone update runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvaporationPolicy {
    /// Every iteration, exactly as listed in the update procedure.
    Verbatim,
    /// Only on iterations divisible by the period.
    Period(u64),
    /// Never; convergence is driven by deposition rate alone.
    None,
}

impl EvaporationPolicy {
    pub fn includes(self, t: u64) -> bool {
        match self {
            EvaporationPolicy::Verbatim => true,
            EvaporationPolicy::Period(e) => t.is_multiple_of(e),
            EvaporationPolicy::None => false,
        }
    }
}

/// Which guard construction protects the box from over/underflow.
///
/// `Verbatim` reproduces the original gate sequence exactly, including its
/// anomalies (a deposition that fills the box is undone by the evaporation
/// half, and a full box on an unselected branch is pushed through the wrap
/// step). `Corrected` uses one extra ancilla so that a full box is absorbing
/// and a just-filled box stays full.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GuardMode {
    Verbatim,
    Corrected,
}

/// How the converged branch is phase-marked before amplification.
///
/// `VerbatimMsb` conditions the phase on the most significant path qubit;
/// it misses best paths whose top bit is 0. `FlagZ` phases every full-box
/// branch regardless of path bits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MarkingMode {
    VerbatimMsb,
    FlagZ,
}

/// Whether the iteration loop runs to the budget or halts at convergence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopRule {
    FixedK,
    FirstFull,
}

/// Resolution of the update procedure's ambiguities, configured per run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EngineModes {
    pub evaporation: EvaporationPolicy,
    pub guard: GuardMode,
    pub marking: MarkingMode,
    pub stop: StopRule,
    pub grover_iterations: usize,
}

impl Default for EngineModes {
    fn default() -> Self {
        EngineModes {
            evaporation: EvaporationPolicy::None,
            guard: GuardMode::Corrected,
            marking: MarkingMode::FlagZ,
            stop: StopRule::FirstFull,
            grover_iterations: 1,
        }
    }
}

/// The n-parallel-path shortest-path instance plus run configuration.
///
/// Weights are stored padded to the next power of two; padding entries are
/// `Infinite` and belong to dummy paths that sit in the superposition but
/// are never selected.
#[derive(Debug, Clone, PartialEq)]
pub struct ProblemInstance {
    path_count: usize,
    weights: Vec<Weight>,
    pub iterations: u64,
    pub box_qubits: usize,
    pub modes: EngineModes,
}

impl ProblemInstance {
    pub fn new(
        weights: Vec<Weight>,
        iterations: u64,
        box_qubits: usize,
        modes: EngineModes,
    ) -> Result<Self, EngineError> {
        let path_count = weights.len();
        if path_count < 2 {
            return Err(EngineError::InvalidInstance(format!(
                "need at least 2 paths, got {path_count}"
            )));
        }
        if iterations < 1 {
            return Err(EngineError::InvalidInstance(
                "iteration budget must be at least 1".into(),
            ));
        }
        if box_qubits < 2 {
            return Err(EngineError::InvalidInstance(format!(
                "pheromone box needs at least 2 qubits, got {box_qubits}"
            )));
        }
        if let Some(bad) = weights.iter().position(|w| w.finite() == Some(0)) {
            return Err(EngineError::InvalidInstance(format!(
                "path {bad} has weight 0; finite weights must be at least 1"
            )));
        }
        if let EvaporationPolicy::Period(e) = modes.evaporation {
            if e < 1 {
                return Err(EngineError::InvalidInstance(
                    "evaporation period must be at least 1".into(),
                ));
            }
        }
        let mut padded = weights;
        let slots = path_count.next_power_of_two();
        padded.resize(slots, Weight::Infinite);
        Ok(ProblemInstance {
            path_count,
            weights: padded,
            iterations,
            box_qubits,
            modes,
        })
    }

    /// Convenience constructor for all-finite weights.
    pub fn from_finite_weights(
        weights: &[u64],
        iterations: u64,
        box_qubits: usize,
        modes: EngineModes,
    ) -> Result<Self, EngineError> {
        Self::new(
            weights.iter().map(|&w| Weight::Finite(w)).collect(),
            iterations,
            box_qubits,
            modes,
        )
    }

    /// Declared path count (before power-of-two padding).
    pub fn path_count(&self) -> usize {
        self.path_count
    }

    /// Number of encodable path indices, `2^x`.
    pub fn path_slots(&self) -> usize {
        self.weights.len()
    }

    /// Path-register width `x = ceil(log2 n)`.
    pub fn path_qubit_count(&self) -> usize {
        self.path_slots().trailing_zeros() as usize
    }

    pub fn weight(&self, path_id: usize) -> Weight {
        self.weights[path_id]
    }

    pub fn weights(&self) -> &[Weight] {
        &self.weights
    }

    /// Replace a path's weight. `Infinite` removes the path from all future
    /// selection; giving a dummy slot a finite weight makes it participate.
    pub fn set_weight(&mut self, path_id: usize, weight: Weight) -> Result<(), EngineError> {
        if path_id >= self.path_slots() {
            return Err(EngineError::PathOutOfRange {
                path_id,
                path_slots: self.path_slots(),
            });
        }
        if weight.finite() == Some(0) {
            return Err(EngineError::InvalidInstance(
                "finite weights must be at least 1".into(),
            ));
        }
        self.weights[path_id] = weight;
        Ok(())
    }

    /// Paths that appear in traces: declared paths always (even after weight
    /// removal), padding slots only once they are given a finite weight.
    pub fn traced_paths(&self) -> Vec<usize> {
        (0..self.path_slots())
            .filter(|&i| i < self.path_count || self.weights[i].is_finite())
            .collect()
    }

    /// Paths selected at iteration `t`: finite weight dividing `t`.
    pub fn selected_paths(&self, t: u64) -> Vec<usize> {
        select_paths(t, &self.weights)
    }
}

/// `{ i : W[i] finite and t mod W[i] = 0 }` in ascending order.
pub fn select_paths(t: u64, weights: &[Weight]) -> Vec<usize> {
    weights
        .iter()
        .enumerate()
        .filter(|(_, w)| w.finite().is_some_and(|w| t.is_multiple_of(w)))
        .map(|(i, _)| i)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::EXAMPLE_WEIGHTS_8;

    fn table1() -> Vec<Weight> {
        EXAMPLE_WEIGHTS_8
            .iter()
            .map(|&w| Weight::Finite(w))
            .collect()
    }

    #[test]
    fn selection_by_modulo() {
        assert_eq!(select_paths(16, &table1()), vec![2, 5]);
        assert_eq!(select_paths(1, &table1()), Vec::<usize>::new());
        assert_eq!(select_paths(5, &table1()), vec![4]);
    }

    #[test]
    fn infinite_weights_never_select() {
        let mut weights = table1();
        weights[5] = Weight::Infinite;
        assert_eq!(select_paths(16, &weights), vec![2]);
    }

    #[test]
    fn padding_to_power_of_two_with_dummies() {
        let instance =
            ProblemInstance::from_finite_weights(&[3, 1, 4, 1, 5], 10, 4, EngineModes::default())
                .unwrap();
        assert_eq!(instance.path_count(), 5);
        assert_eq!(instance.path_slots(), 8);
        assert_eq!(instance.path_qubit_count(), 3);
        for dummy in 5..8 {
            assert_eq!(instance.weight(dummy), Weight::Infinite);
        }
        assert_eq!(instance.traced_paths(), vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn set_weight_reaches_padding_slots() {
        let mut instance =
            ProblemInstance::from_finite_weights(&[3, 1, 4, 1, 5], 10, 4, EngineModes::default())
                .unwrap();
        instance.set_weight(6, Weight::Finite(2)).unwrap();
        assert_eq!(instance.traced_paths(), vec![0, 1, 2, 3, 4, 6]);
        assert!(instance.selected_paths(4).contains(&6));
        assert!(instance.set_weight(8, Weight::Finite(1)).is_err());
        assert!(instance.set_weight(0, Weight::Finite(0)).is_err());
    }

    #[test]
    fn rejects_degenerate_instances() {
        assert!(ProblemInstance::from_finite_weights(&[1], 10, 4, EngineModes::default()).is_err());
        assert!(
            ProblemInstance::from_finite_weights(&[1, 2], 0, 4, EngineModes::default()).is_err()
        );
        assert!(
            ProblemInstance::from_finite_weights(&[1, 2], 10, 1, EngineModes::default()).is_err()
        );
        assert!(
            ProblemInstance::from_finite_weights(&[1, 0], 10, 4, EngineModes::default()).is_err()
        );
    }

    #[test]
    fn evaporation_policy_schedule() {
        assert!(EvaporationPolicy::Verbatim.includes(1));
        assert!(!EvaporationPolicy::None.includes(7));
        let period = EvaporationPolicy::Period(3);
        assert!(period.includes(3));
        assert!(period.includes(6));
        assert!(!period.includes(4));
    }
}
