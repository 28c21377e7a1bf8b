use crate::circuit::{Circuit, GateKind, Polarity};

use super::SimError;

/// Largest register the sparse backend can index.
pub const MAX_SPARSE_QUBITS: usize = 128;

/// A gate reduced to bit masks over a `u128` basis index.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) enum Op {
    /// Flip `target` when `index & mask == value`.
    Flip { mask: u128, value: u128, target: u128 },
    Swap { a: u128, b: u128 },
    H { bit: u128 },
    /// `|0> -> cos|0> + sin|1>`, `|1> -> -sin|0> + cos|1>` with half-angle terms.
    Ry { bit: u128, cos: f64, sin: f64 },
}

impl Op {
    pub(crate) fn is_permutation(&self) -> bool {
        matches!(self, Op::Flip { .. } | Op::Swap { .. })
    }

    #[inline]
    pub(crate) fn permute(&self, index: u128) -> u128 {
        match *self {
            Op::Flip { mask, value, target } => {
                if index & mask == value {
                    index ^ target
                } else {
                    index
                }
            }
            Op::Swap { a, b } => {
                if (index & a == 0) != (index & b == 0) {
                    index ^ a ^ b
                } else {
                    index
                }
            }
            _ => unreachable!("not a permutation"),
        }
    }
}

pub(crate) fn compile(circuit: &Circuit) -> Result<Vec<Op>, SimError> {
    if circuit.num_qubits() > MAX_SPARSE_QUBITS {
        return Err(SimError::TooManyQubits {
            qubits: circuit.num_qubits(),
            limit: MAX_SPARSE_QUBITS,
        });
    }
    let bit = |q: crate::circuit::Qubit| 1u128 << q.0;
    Ok(circuit
        .gates()
        .iter()
        .map(|g| match g.kind() {
            GateKind::H => Op::H { bit: bit(g.target()) },
            GateKind::Ry(theta) => Op::Ry {
                bit: bit(g.target()),
                cos: (theta / 2.0).cos(),
                sin: (theta / 2.0).sin(),
            },
            GateKind::Swap => Op::Swap {
                a: bit(g.targets()[0]),
                b: bit(g.targets()[1]),
            },
            GateKind::X | GateKind::Cnot | GateKind::Toffoli | GateKind::Mcx => {
                let mut mask = 0;
                let mut value = 0;
                for c in g.controls() {
                    mask |= bit(c.qubit);
                    if c.polarity == Polarity::Positive {
                        value |= bit(c.qubit);
                    }
                }
                Op::Flip {
                    mask,
                    value,
                    target: bit(g.target()),
                }
            }
        })
        .collect())
}
