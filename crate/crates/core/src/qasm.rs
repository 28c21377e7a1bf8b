//! OpenQASM 2.0 text for lowered circuits.

use std::fmt::Write as _;

use thiserror::Error;

use crate::circuit::{Circuit, GateKind};

#[derive(Debug, Error, PartialEq)]
pub enum QasmError {
    #[error("gate {gate_index} ({gate}) is not in the exportable set; lower the circuit first")]
    Unlowered { gate_index: usize, gate: String },
}

/// Emits a single `q` register with register names as comments. Only
/// H, X, RY, CNOT, TOFFOLI and SWAP with positive controls are accepted.
pub fn emit_qasm(circuit: &Circuit) -> Result<String, QasmError> {
    let mut out = String::new();
    out.push_str("OPENQASM 2.0;\ninclude \"qelib1.inc\";\n");
    for r in circuit.registers() {
        let list: Vec<String> = r.qubits.iter().map(|q| q.0.to_string()).collect();
        let _ = writeln!(out, "// {}: [{}]", r.name, list.join(", "));
    }
    let _ = writeln!(out, "qreg q[{}];", circuit.num_qubits());
    for (index, g) in circuit.gates().iter().enumerate() {
        if g.has_negative_control() {
            return Err(unlowered(index, g));
        }
        let q = |i: usize| format!("q[{}]", g.qubits().nth(i).expect("arity checked").0);
        let line = match g.kind() {
            GateKind::H => format!("h {};", q(0)),
            GateKind::X => format!("x {};", q(0)),
            GateKind::Ry(theta) => format!("ry({}) {};", angle(theta), q(0)),
            GateKind::Cnot => {
                format!("cx q[{}],q[{}];", g.controls()[0].qubit.0, g.target().0)
            }
            GateKind::Toffoli => format!(
                "ccx q[{}],q[{}],q[{}];",
                g.controls()[0].qubit.0,
                g.controls()[1].qubit.0,
                g.target().0
            ),
            GateKind::Swap => format!("swap {},{};", q(0), q(1)),
            GateKind::Mcx => return Err(unlowered(index, g)),
        };
        out.push_str(&line);
        out.push('\n');
    }
    Ok(out)
}

/// Shortest decimal that parses back to the same `f64` (at most 17
/// significant digits), always with a decimal point and never an exponent.
fn angle(theta: f64) -> String {
    let mut s = theta.to_string();
    if !s.contains('.') {
        s.push_str(".0");
    }
    s
}

fn unlowered(gate_index: usize, g: &crate::circuit::Gate) -> QasmError {
    QasmError::Unlowered {
        gate_index,
        gate: g.to_string(),
    }
}
