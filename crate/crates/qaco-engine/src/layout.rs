use crate::instance::{GuardMode, ProblemInstance};

/// Fixed qubit map shared by every circuit the engine builds.
///
/// Register order follows the initialization procedure: path qubits first
/// (bit `b` of the path index on qubit `b`, so the last path qubit is the
/// most significant bit), then the two update ancillas, the pheromone box,
/// and the marking target. The corrected guard appends one more ancilla.
///
/// The box is read with its first qubit as the most significant bit; that
/// orientation is what makes the deposition cascade walk the fixed
/// state order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RegisterLayout {
    path_qubits: usize,
    box_qubits: usize,
    has_guard_ancilla: bool,
}

impl RegisterLayout {
    pub fn for_instance(instance: &ProblemInstance) -> Self {
        RegisterLayout {
            path_qubits: instance.path_qubit_count(),
            box_qubits: instance.box_qubits,
            has_guard_ancilla: instance.modes.guard == GuardMode::Corrected,
        }
    }

    pub fn new(path_qubits: usize, box_qubits: usize, guard: GuardMode) -> Self {
        RegisterLayout {
            path_qubits,
            box_qubits,
            has_guard_ancilla: guard == GuardMode::Corrected,
        }
    }

    pub fn path_qubit_count(&self) -> usize {
        self.path_qubits
    }

    pub fn box_qubit_count(&self) -> usize {
        self.box_qubits
    }

    /// Qubit carrying bit `b` of the path index.
    pub fn path_qubit(&self, b: usize) -> usize {
        debug_assert!(b < self.path_qubits);
        b
    }

    /// All path qubits, least significant bit first.
    pub fn path_qubits(&self) -> Vec<usize> {
        (0..self.path_qubits).collect()
    }

    /// Ancilla raised on selected branches; controls the deposition cascade.
    pub fn deposit_flag(&self) -> usize {
        self.path_qubits
    }

    /// Ancilla raised on unselected branches; controls the evaporation
    /// cascade.
    pub fn evaporate_flag(&self) -> usize {
        self.path_qubits + 1
    }

    /// Box qubit `m`; `m = 0` is the most significant bit of the box value.
    pub fn box_qubit(&self, m: usize) -> usize {
        debug_assert!(m < self.box_qubits);
        self.path_qubits + 2 + m
    }

    pub fn box_qubits(&self) -> Vec<usize> {
        (0..self.box_qubits).map(|m| self.box_qubit(m)).collect()
    }

    /// Target of the full-box mark before amplification.
    pub fn mark_target(&self) -> usize {
        self.path_qubits + 2 + self.box_qubits
    }

    /// Extra ancilla used by the corrected guard.
    pub fn guard_ancilla(&self) -> Option<usize> {
        self.has_guard_ancilla
            .then(|| self.path_qubits + self.box_qubits + 3)
    }

    pub fn total_qubits(&self) -> usize {
        self.path_qubits + self.box_qubits + 3 + usize::from(self.has_guard_ancilla)
    }

    /// Path index encoded in basis-state `index`.
    pub fn path_of_index(&self, index: usize) -> usize {
        index & ((1 << self.path_qubits) - 1)
    }

    /// Box value encoded in basis-state `index` (first box qubit = MSB).
    pub fn box_value_of_index(&self, index: usize) -> u64 {
        let mut value = 0u64;
        for m in 0..self.box_qubits {
            let bit = (index >> self.box_qubit(m)) & 1;
            value |= (bit as u64) << (self.box_qubits - 1 - m);
        }
        value
    }

    /// Basis index carrying `path_id`, `box_value`, and zeroed ancillas.
    pub fn index_of(&self, path_id: usize, box_value: u64) -> usize {
        let mut index = path_id;
        for m in 0..self.box_qubits {
            let bit = (box_value >> (self.box_qubits - 1 - m)) & 1;
            index |= (bit as usize) << self.box_qubit(m);
        }
        index
    }

    /// Render a box value as its qubit string, most significant bit first.
    pub fn box_bits(&self, box_value: u64) -> String {
        (0..self.box_qubits)
            .map(|m| {
                if (box_value >> (self.box_qubits - 1 - m)) & 1 == 1 {
                    '1'
                } else {
                    '0'
                }
            })
            .collect()
    }

    pub fn full_box_value(&self) -> u64 {
        (1u64 << self.box_qubits) - 1
    }
}
