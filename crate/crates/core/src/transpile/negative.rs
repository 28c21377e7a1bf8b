use std::collections::BTreeSet;

use crate::circuit::{Circuit, Control, Gate, GateKind, Polarity, Qubit};

/// Rewrites every negative control as a positive one conjugated by X.
///
/// X gates are kept pending across consecutive gates so that adjacent
/// sandwiches cancel: before each gate, a touched qubit is flipped only if
/// its pending flip differs from what the gate needs. A plain X on a qubit
/// whose flip is pending cancels against it. Leftover flips are flushed in
/// qubit order at the end. Circuits without negative controls pass through
/// unchanged.
pub fn resolve_negative_controls(circuit: &Circuit) -> Circuit {
    let mut out = Circuit::like(circuit);
    let mut pending: BTreeSet<Qubit> = BTreeSet::new();
    let emit = |out: &mut Circuit, g: Gate| out.append(g).expect("gate already validated");
    for gate in circuit.gates() {
        if gate.kind() == GateKind::X && pending.remove(&gate.target()) {
            continue;
        }
        let wanted: BTreeSet<Qubit> = gate
            .controls()
            .iter()
            .filter(|c| c.polarity == Polarity::Negative)
            .map(|c| c.qubit)
            .collect();
        for q in gate.qubits() {
            if pending.contains(&q) != wanted.contains(&q) {
                emit(&mut out, Gate::x(q));
            }
            pending.remove(&q);
        }
        pending.extend(wanted.iter().copied());
        emit(&mut out, with_positive_controls(gate));
    }
    for q in pending {
        emit(&mut out, Gate::x(q));
    }
    out
}

fn with_positive_controls(gate: &Gate) -> Gate {
    if !gate.has_negative_control() {
        return gate.clone();
    }
    let controls = gate.controls().iter().map(|c| Control::positive(c.qubit)).collect();
    Gate::new(gate.kind(), gate.targets().to_vec(), controls).expect("same shape as the original")
}
