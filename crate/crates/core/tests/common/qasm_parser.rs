//! Minimal reader for the QASM subset the exporter writes. Kept separate
//! from the grammar-level check so rotation angles keep full precision.

use qpulba::circuit::{Circuit, Gate};

fn qubit(arg: &str) -> Result<usize, String> {
    let inner = arg
        .trim()
        .strip_prefix("q[")
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| format!("bad qubit operand {arg:?}"))?;
    inner.parse().map_err(|e| format!("{arg:?}: {e}"))
}

pub fn parse(text: &str) -> Result<Circuit, String> {
    let mut circuit: Option<Circuit> = None;
    for (n, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with("//") {
            continue;
        }
        let stmt = line
            .strip_suffix(';')
            .ok_or_else(|| format!("line {}: missing ';'", n + 1))?;
        if stmt == "OPENQASM 2.0" || stmt == "include \"qelib1.inc\"" {
            continue;
        }
        if let Some(rest) = stmt.strip_prefix("qreg ") {
            if circuit.is_some() {
                return Err("second qreg".into());
            }
            circuit = Some(Circuit::new(qubit(rest)?));
            continue;
        }
        let c = circuit.as_mut().ok_or("gate before qreg")?;
        let (head, operands) = stmt.split_once(' ').ok_or_else(|| format!("line {}: {stmt}", n + 1))?;
        let qs: Vec<usize> = operands.split(',').map(qubit).collect::<Result<_, _>>()?;
        let gate = match (head, qs.as_slice()) {
            ("h", [a]) => Gate::h(*a),
            ("x", [a]) => Gate::x(*a),
            ("cx", [a, b]) => Gate::cnot(*a, *b),
            ("ccx", [a, b, t]) => Gate::toffoli(*a, *b, *t),
            ("swap", [a, b]) => Gate::swap(*a, *b),
            (ry, [a]) if ry.starts_with("ry(") && ry.ends_with(')') => {
                let theta: f64 = ry[3..ry.len() - 1].parse().map_err(|e| format!("angle: {e}"))?;
                Gate::ry(*a, theta)
            }
            _ => return Err(format!("line {}: unsupported {stmt:?}", n + 1)),
        };
        c.append(gate).map_err(|e| e.to_string())?;
    }
    circuit.ok_or_else(|| "no qreg".into())
}
