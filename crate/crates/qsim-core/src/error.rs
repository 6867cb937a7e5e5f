use thiserror::Error;

/// Errors raised by state construction and gate application.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SimError {
    #[error("qubit index {index} out of range for a {qubit_count}-qubit state")]
    QubitOutOfRange { index: usize, qubit_count: usize },

    #[error("duplicate qubit index {index} in gate operand list")]
    DuplicateQubit { index: usize },

    #[error("{kind} cannot be applied as a unitary gate; use its dedicated operation")]
    NonUnitaryOp { kind: &'static str },

    #[error("MCT requires at least one control qubit")]
    EmptyControls,

    #[error("{kind} takes {expected} control qubits, got {got}")]
    BadControlCount {
        kind: &'static str,
        expected: usize,
        got: usize,
    },

    #[error(
        "reset of qubit {qubit} would merge branches: basis states {index_a} and {index_b} \
         both carry amplitude"
    )]
    ResetCollision {
        qubit: usize,
        index_a: usize,
        index_b: usize,
    },

    #[error("decomposition of a {controls}-control MCT needs {needed} ancillas, got {got}")]
    InsufficientAncillas {
        controls: usize,
        needed: usize,
        got: usize,
    },

    #[error("sampling requires at least one shot")]
    ZeroShots,

    #[error("circuit expects {expected} qubits but the state has {got}")]
    QubitCountMismatch { expected: usize, got: usize },

    #[error("state of {requested} qubits exceeds the simulator limit of {limit}")]
    QubitLimitExceeded { requested: usize, limit: usize },
}

/// Errors from re-reading exported OpenQASM 2.0 text.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum QasmError {
    #[error("line {line}: expected `{expected}`")]
    MissingHeader { line: usize, expected: &'static str },

    #[error("line {line}: malformed register declaration `{text}`")]
    BadRegister { line: usize, text: String },

    #[error("line {line}: unknown gate `{name}`")]
    UnknownGate { line: usize, name: String },

    #[error("line {line}: gate `{name}` takes {expected} qubit arguments, got {got}")]
    WrongArity {
        line: usize,
        name: String,
        expected: usize,
        got: usize,
    },

    #[error("line {line}: cannot parse qubit reference `{text}`")]
    BadQubitRef { line: usize, text: String },

    #[error("line {line}: unknown register `{name}`")]
    UnknownRegister { line: usize, name: String },

    #[error("line {line}: cannot parse angle `{text}`")]
    BadAngle { line: usize, text: String },

    #[error("line {line}: malformed statement `{text}`")]
    BadStatement { line: usize, text: String },
}
