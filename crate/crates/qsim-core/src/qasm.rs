//! OpenQASM 2.0 writer and a parser for the same dialect.
//!
//! The exporter emits one quantum register `q`, an ancilla register `anc`
//! when a multi-controlled NOT needs decomposition, and one classical
//! register `c` for measured qubits. MCT gates with more than two controls
//! are always written decomposed into `ccx`/`cx`.

use std::fmt::Write as _;

use crate::circuit::{decompose_mct, Circuit};
use crate::error::QasmError;
use crate::gate::{GateKind, GateOp};

/// Ancilla count the exporter needs for `circuit`: the widest MCT minus one.
pub fn ancilla_pool_size(circuit: &Circuit) -> usize {
    circuit
        .ops
        .iter()
        .filter(|op| op.kind == GateKind::Mct && op.controls.len() > 2)
        .map(|op| op.controls.len() - 1)
        .max()
        .unwrap_or(0)
}

/// Render a circuit as OpenQASM 2.0 text.
pub fn export(circuit: &Circuit) -> String {
    let n = circuit.qubit_count;
    let pool = ancilla_pool_size(circuit);
    let measures = circuit.measured_qubits();

    let mut out = String::new();
    out.push_str("OPENQASM 2.0;\n");
    out.push_str("include \"qelib1.inc\";\n");
    let _ = writeln!(out, "qreg q[{n}];");
    if pool > 0 {
        let _ = writeln!(out, "qreg anc[{pool}];");
    }
    if !measures.is_empty() {
        let _ = writeln!(out, "creg c[{}];", measures.len());
    }

    let mut clbit = 0usize;
    for op in &circuit.ops {
        match op.kind {
            GateKind::X => {
                let _ = writeln!(out, "x q[{}];", op.target);
            }
            GateKind::H => {
                let _ = writeln!(out, "h q[{}];", op.target);
            }
            GateKind::Cnot => {
                let _ = writeln!(out, "cx q[{}],q[{}];", op.controls[0], op.target);
            }
            GateKind::Ccnot => {
                let _ = writeln!(
                    out,
                    "ccx q[{}],q[{}],q[{}];",
                    op.controls[0], op.controls[1], op.target
                );
            }
            GateKind::Mct => {
                let ancillas: Vec<usize> = (n..n + op.controls.len() - 1).collect();
                let decomposed = decompose_mct(&op.controls, op.target, &ancillas)
                    .expect("fresh ancilla indices cannot collide");
                for sub in &decomposed.ops {
                    let fmt = |q: usize| {
                        if q >= n {
                            format!("anc[{}]", q - n)
                        } else {
                            format!("q[{q}]")
                        }
                    };
                    match sub.kind {
                        GateKind::Cnot => {
                            let _ =
                                writeln!(out, "cx {},{};", fmt(sub.controls[0]), fmt(sub.target));
                        }
                        GateKind::Ccnot => {
                            let _ = writeln!(
                                out,
                                "ccx {},{},{};",
                                fmt(sub.controls[0]),
                                fmt(sub.controls[1]),
                                fmt(sub.target)
                            );
                        }
                        _ => unreachable!("decomposition yields only cx/ccx"),
                    }
                }
            }
            GateKind::Cphase => {
                let _ = writeln!(
                    out,
                    "cu1({:?}) q[{}],q[{}];",
                    op.angle, op.controls[0], op.target
                );
            }
            GateKind::Reset => {
                let _ = writeln!(out, "reset q[{}];", op.target);
            }
            GateKind::Measure => {
                let _ = writeln!(out, "measure q[{}] -> c[{clbit}];", op.target);
                clbit += 1;
            }
        }
    }
    out
}

/// Parse the exporter's dialect back into a circuit. Register declarations
/// are concatenated in order, so `anc[i]` maps to qubit `N + i`.
pub fn parse(text: &str) -> Result<Circuit, QasmError> {
    let mut registers: Vec<(String, usize, usize)> = Vec::new(); // (name, offset, size)
    let mut total_qubits = 0usize;
    let mut ops: Vec<GateOp> = Vec::new();
    let mut saw_header = false;

    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let stmt = raw.trim();
        if stmt.is_empty() || stmt.starts_with("//") {
            continue;
        }
        if !saw_header {
            if stmt != "OPENQASM 2.0;" {
                return Err(QasmError::MissingHeader {
                    line,
                    expected: "OPENQASM 2.0;",
                });
            }
            saw_header = true;
            continue;
        }
        if stmt.starts_with("include") {
            continue;
        }
        let stmt = stmt
            .strip_suffix(';')
            .ok_or_else(|| QasmError::BadStatement {
                line,
                text: stmt.to_string(),
            })?;

        if let Some(decl) = stmt.strip_prefix("qreg ") {
            let (name, size) = parse_register_decl(decl, line)?;
            registers.push((name, total_qubits, size));
            total_qubits += size;
            continue;
        }
        if stmt.starts_with("creg ") {
            parse_register_decl(stmt.strip_prefix("creg ").unwrap(), line)?;
            continue;
        }
        if let Some(rest) = stmt.strip_prefix("measure ") {
            let (lhs, _rhs) = rest
                .split_once("->")
                .ok_or_else(|| QasmError::BadStatement {
                    line,
                    text: stmt.to_string(),
                })?;
            let qubit = resolve_qubit(lhs.trim(), &registers, line)?;
            ops.push(GateOp::measure(qubit));
            continue;
        }

        let (head, args) = stmt
            .split_once(' ')
            .ok_or_else(|| QasmError::BadStatement {
                line,
                text: stmt.to_string(),
            })?;
        let qubits: Vec<usize> = args
            .split(',')
            .map(|a| resolve_qubit(a.trim(), &registers, line))
            .collect::<Result<_, _>>()?;

        let expect = |n: usize| -> Result<(), QasmError> {
            if qubits.len() != n {
                Err(QasmError::WrongArity {
                    line,
                    name: head.to_string(),
                    expected: n,
                    got: qubits.len(),
                })
            } else {
                Ok(())
            }
        };

        if let Some(angle_text) = head.strip_prefix("cu1(").and_then(|h| h.strip_suffix(')')) {
            let angle: f64 = angle_text.parse().map_err(|_| QasmError::BadAngle {
                line,
                text: angle_text.to_string(),
            })?;
            expect(2)?;
            ops.push(GateOp::cphase(qubits[0], qubits[1], angle));
            continue;
        }
        match head {
            "x" => {
                expect(1)?;
                ops.push(GateOp::x(qubits[0]));
            }
            "h" => {
                expect(1)?;
                ops.push(GateOp::h(qubits[0]));
            }
            "cx" => {
                expect(2)?;
                ops.push(GateOp::cnot(qubits[0], qubits[1]));
            }
            "ccx" => {
                expect(3)?;
                ops.push(GateOp::ccnot(qubits[0], qubits[1], qubits[2]));
            }
            "reset" => {
                expect(1)?;
                ops.push(GateOp::reset(qubits[0]));
            }
            other => {
                return Err(QasmError::UnknownGate {
                    line,
                    name: other.to_string(),
                })
            }
        }
    }

    Ok(Circuit {
        qubit_count: total_qubits,
        ops,
    })
}

fn parse_register_decl(decl: &str, line: usize) -> Result<(String, usize), QasmError> {
    let bad = || QasmError::BadRegister {
        line,
        text: decl.to_string(),
    };
    let open = decl.find('[').ok_or_else(bad)?;
    let close = decl.find(']').ok_or_else(bad)?;
    if close <= open {
        return Err(bad());
    }
    let name = decl[..open].trim().to_string();
    let size: usize = decl[open + 1..close].parse().map_err(|_| bad())?;
    if name.is_empty() || size == 0 {
        return Err(bad());
    }
    Ok((name, size))
}

fn resolve_qubit(
    token: &str,
    registers: &[(String, usize, usize)],
    line: usize,
) -> Result<usize, QasmError> {
    let bad = || QasmError::BadQubitRef {
        line,
        text: token.to_string(),
    };
    let open = token.find('[').ok_or_else(bad)?;
    let close = token.find(']').ok_or_else(bad)?;
    if close <= open {
        return Err(bad());
    }
    let name = &token[..open];
    let idx: usize = token[open + 1..close].parse().map_err(|_| bad())?;
    let (_, offset, size) = registers
        .iter()
        .find(|(n, _, _)| n == name)
        .ok_or_else(|| QasmError::UnknownRegister {
            line,
            name: name.to_string(),
        })?;
    if idx >= *size {
        return Err(bad());
    }
    Ok(offset + idx)
}
