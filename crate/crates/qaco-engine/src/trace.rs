/// One observed pheromone-box value: iteration, path, and the box state both
/// as an integer and as its qubit string (most significant bit first).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceRow {
    pub t: u64,
    pub path_id: usize,
    pub box_value: u64,
    pub box_bits: String,
}

impl TraceRow {
    pub fn new(t: u64, path_id: usize, box_value: u64, box_qubits: usize) -> Self {
        let box_bits = (0..box_qubits)
            .map(|m| {
                if (box_value >> (box_qubits - 1 - m)) & 1 == 1 {
                    '1'
                } else {
                    '0'
                }
            })
            .collect();
        TraceRow {
            t,
            path_id,
            box_value,
            box_bits,
        }
    }
}

/// Per-iteration, per-path box values across a run.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IterationTrace {
    pub rows: Vec<TraceRow>,
}

impl IterationTrace {
    pub fn new() -> Self {
        IterationTrace { rows: Vec::new() }
    }

    pub fn extend(&mut self, rows: Vec<TraceRow>) {
        self.rows.extend(rows);
    }

    pub fn row(&self, t: u64, path_id: usize) -> Option<&TraceRow> {
        self.rows.iter().find(|r| r.t == t && r.path_id == path_id)
    }

    /// Paths whose box is all-ones at iteration `t`.
    pub fn full_paths_at(&self, t: u64, box_qubits: usize) -> Vec<usize> {
        let full = (1u64 << box_qubits) - 1;
        self.rows
            .iter()
            .filter(|r| r.t == t && r.box_value == full)
            .map(|r| r.path_id)
            .collect()
    }
}
