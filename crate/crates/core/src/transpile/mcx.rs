use serde::{Deserialize, Serialize};

use super::TranspileError;
use crate::circuit::{Circuit, Gate, GateKind, Qubit, Register};

/// How MCX gates with three or more controls are decomposed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LoweringStrategy {
    /// `4(k-2)` Toffolis on `k-2` borrowed qubits in arbitrary states,
    /// taken from the existing circuit.
    #[default]
    Borrowed,
    /// `2k-3` Toffolis on `k-2` fresh zeroed qubits appended to the circuit.
    Clean,
}

impl std::str::FromStr for LoweringStrategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "borrowed" => Ok(LoweringStrategy::Borrowed),
            "clean" => Ok(LoweringStrategy::Clean),
            other => Err(format!("unknown strategy {other:?} (expected borrowed or clean)")),
        }
    }
}

/// Ladder of Toffolis from the last control down to the first helper:
/// `T(c[k-1], a[k-3] -> target)`, `T(c[k-2], a[k-4] -> a[k-3])`, ...,
/// `T(c[2], a[0] -> a[1])`.
fn ladder(controls: &[Qubit], helpers: &[Qubit], target: Qubit) -> Vec<Gate> {
    let k = controls.len();
    let mut out = vec![Gate::toffoli(controls[k - 1], helpers[k - 3], target)];
    for i in (2..k - 1).rev() {
        out.push(Gate::toffoli(controls[i], helpers[i - 2], helpers[i - 1]));
    }
    out
}

/// Borrowed-qubit decomposition; helpers are restored to their input values.
pub(crate) fn borrowed_mcx(controls: &[Qubit], helpers: &[Qubit], target: Qubit) -> Vec<Gate> {
    let d = ladder(controls, helpers, target);
    let d_inner = &d[1..];
    let m = Gate::toffoli(controls[0], controls[1], helpers[0]);
    let mut out = Vec::with_capacity(4 * (controls.len() - 2));
    out.extend(d.iter().cloned());
    out.push(m.clone());
    out.extend(d.iter().rev().cloned());
    out.extend(d_inner.iter().cloned());
    out.push(m);
    out.extend(d_inner.iter().rev().cloned());
    out
}

/// Compute-copy-uncompute chain; helpers must start and end at zero.
pub(crate) fn clean_mcx(controls: &[Qubit], helpers: &[Qubit], target: Qubit) -> Vec<Gate> {
    let k = controls.len();
    let mut compute = vec![Gate::toffoli(controls[0], controls[1], helpers[0])];
    for i in 2..k - 1 {
        compute.push(Gate::toffoli(controls[i], helpers[i - 2], helpers[i - 1]));
    }
    let mut out = compute.clone();
    out.push(Gate::toffoli(controls[k - 1], helpers[k - 3], target));
    out.extend(compute.into_iter().rev());
    out
}

/// Replaces every MCX by CNOT, TOFFOLI or a Toffoli network.
///
/// Negative controls must already be resolved. Under the borrowed strategy
/// helpers are any qubits the gate does not touch, ANCILLA register first,
/// then by ascending index. Under the clean strategy a `LOWERING` register
/// is appended, sized for the widest gate.
pub fn lower_mcx(circuit: &Circuit, strategy: LoweringStrategy) -> Result<Circuit, TranspileError> {
    let mut gates: Vec<Gate> = Vec::with_capacity(circuit.len());
    let mut fresh: Vec<Qubit> = Vec::new();
    let ancilla: Vec<Qubit> = circuit.register("ANCILLA").map(|r| r.qubits.clone()).unwrap_or_default();
    let n = circuit.num_qubits();

    for (index, gate) in circuit.gates().iter().enumerate() {
        if gate.has_negative_control() {
            return Err(TranspileError::UnresolvedNegativeControl { gate_index: index });
        }
        if gate.kind() != GateKind::Mcx {
            gates.push(gate.clone());
            continue;
        }
        let controls: Vec<Qubit> = gate.controls().iter().map(|c| c.qubit).collect();
        let target = gate.target();
        match controls.len() {
            1 => gates.push(Gate::cnot(controls[0], target)),
            2 => gates.push(Gate::toffoli(controls[0], controls[1], target)),
            k => {
                let needed = k - 2;
                match strategy {
                    LoweringStrategy::Borrowed => {
                        let busy: Vec<Qubit> = gate.qubits().collect();
                        let helpers: Vec<Qubit> = ancilla
                            .iter()
                            .copied()
                            .chain((0..n).map(Qubit).filter(|q| !ancilla.contains(q)))
                            .filter(|q| !busy.contains(q))
                            .take(needed)
                            .collect();
                        if helpers.len() < needed {
                            return Err(TranspileError::InsufficientAncilla {
                                gate_index: index,
                                needed,
                                available: helpers.len(),
                            });
                        }
                        gates.extend(borrowed_mcx(&controls, &helpers, target));
                    }
                    LoweringStrategy::Clean => {
                        while fresh.len() < needed {
                            fresh.push(Qubit(n + fresh.len()));
                        }
                        gates.extend(clean_mcx(&controls, &fresh[..needed], target));
                    }
                }
            }
        }
    }

    let mut out = Circuit::like(circuit);
    if !fresh.is_empty() {
        let added = out.widen(fresh.len());
        out.add_register(Register::new("LOWERING", added))?;
    }
    for g in gates {
        out.append(g)?;
    }
    Ok(out)
}
