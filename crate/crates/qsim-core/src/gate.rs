use crate::error::SimError;

/// The gate set: Pauli-X, Hadamard, controlled NOTs up to arbitrary control
/// count, controlled phase, plus the two non-unitary circuit ops.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GateKind {
    X,
    H,
    Cnot,
    Ccnot,
    Mct,
    Cphase,
    Reset,
    Measure,
}

impl GateKind {
    pub fn name(&self) -> &'static str {
        match self {
            GateKind::X => "X",
            GateKind::H => "H",
            GateKind::Cnot => "CNOT",
            GateKind::Ccnot => "CCNOT",
            GateKind::Mct => "MCT",
            GateKind::Cphase => "CPHASE",
            GateKind::Reset => "RESET",
            GateKind::Measure => "MEASURE",
        }
    }
}

/// One gate application: a kind, its control qubits, a target, and an angle
/// for `Cphase`.
#[derive(Debug, Clone, PartialEq)]
pub struct GateOp {
    pub kind: GateKind,
    pub controls: Vec<usize>,
    pub target: usize,
    pub angle: f64,
}

impl GateOp {
    pub fn x(target: usize) -> Self {
        GateOp {
            kind: GateKind::X,
            controls: Vec::new(),
            target,
            angle: 0.0,
        }
    }

    pub fn h(target: usize) -> Self {
        GateOp {
            kind: GateKind::H,
            controls: Vec::new(),
            target,
            angle: 0.0,
        }
    }

    pub fn cnot(control: usize, target: usize) -> Self {
        GateOp {
            kind: GateKind::Cnot,
            controls: vec![control],
            target,
            angle: 0.0,
        }
    }

    pub fn ccnot(control_a: usize, control_b: usize, target: usize) -> Self {
        GateOp {
            kind: GateKind::Ccnot,
            controls: vec![control_a, control_b],
            target,
            angle: 0.0,
        }
    }

    /// Multi-controlled NOT. One control is a CNOT, two a CCNOT; the kind is
    /// normalized so equivalent gates compare and count identically.
    pub fn mct(controls: Vec<usize>, target: usize) -> Self {
        let kind = match controls.len() {
            1 => GateKind::Cnot,
            2 => GateKind::Ccnot,
            _ => GateKind::Mct,
        };
        GateOp {
            kind,
            controls,
            target,
            angle: 0.0,
        }
    }

    pub fn cphase(control: usize, target: usize, angle: f64) -> Self {
        GateOp {
            kind: GateKind::Cphase,
            controls: vec![control],
            target,
            angle,
        }
    }

    pub fn reset(target: usize) -> Self {
        GateOp {
            kind: GateKind::Reset,
            controls: Vec::new(),
            target,
            angle: 0.0,
        }
    }

    pub fn measure(target: usize) -> Self {
        GateOp {
            kind: GateKind::Measure,
            controls: Vec::new(),
            target,
            angle: 0.0,
        }
    }

    /// All qubits the op touches, controls first.
    pub fn qubits(&self) -> impl Iterator<Item = usize> + '_ {
        self.controls
            .iter()
            .copied()
            .chain(std::iter::once(self.target))
    }

    /// Index bounds, distinctness, and per-kind operand arity.
    pub fn validate(&self, qubit_count: usize) -> Result<(), SimError> {
        for q in self.qubits() {
            if q >= qubit_count {
                return Err(SimError::QubitOutOfRange {
                    index: q,
                    qubit_count,
                });
            }
        }
        let mut seen = vec![false; qubit_count];
        for q in self.qubits() {
            if seen[q] {
                return Err(SimError::DuplicateQubit { index: q });
            }
            seen[q] = true;
        }
        let expected = match self.kind {
            GateKind::X | GateKind::H | GateKind::Reset | GateKind::Measure => Some(0),
            GateKind::Cnot | GateKind::Cphase => Some(1),
            GateKind::Ccnot => Some(2),
            GateKind::Mct => {
                if self.controls.is_empty() {
                    return Err(SimError::EmptyControls);
                }
                None
            }
        };
        if let Some(expected) = expected {
            if self.controls.len() != expected {
                return Err(SimError::BadControlCount {
                    kind: self.kind.name(),
                    expected,
                    got: self.controls.len(),
                });
            }
        }
        Ok(())
    }

    /// Bitmask with every control bit set.
    pub(crate) fn control_mask(&self) -> usize {
        self.controls.iter().fold(0usize, |m, &q| m | (1 << q))
    }
}
