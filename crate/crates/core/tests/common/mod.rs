#![allow(dead_code)]

pub mod qasm_parser;
pub mod tables;

use qpulba::circuit::{Circuit, GateKind, Polarity, Qubit};

/// Classical evaluation of a permutation-only circuit on one basis state,
/// written independently of the simulator.
pub fn eval_permutation(circuit: &Circuit, mut index: u128) -> u128 {
    for g in circuit.gates() {
        let bit = |q: Qubit| index >> q.0 & 1 == 1;
        let fires = g
            .controls()
            .iter()
            .all(|c| bit(c.qubit) == (c.polarity == Polarity::Positive));
        if !fires {
            continue;
        }
        match g.kind() {
            GateKind::Swap => {
                let (a, b) = (g.targets()[0], g.targets()[1]);
                if bit(a) != bit(b) {
                    index ^= (1 << a.0) | (1 << b.0);
                }
            }
            GateKind::H | GateKind::Ry(_) => panic!("not a permutation: {g}"),
            _ => index ^= 1 << g.target().0,
        }
    }
    index
}

/// Writes `value` into `register` of basis index `index`.
pub fn with_register(mut index: u128, register: &[Qubit], value: u128) -> u128 {
    for (b, q) in register.iter().enumerate() {
        index &= !(1 << q.0);
        index |= (value >> b & 1) << q.0;
    }
    index
}

pub fn read_register(index: u128, register: &[Qubit]) -> u128 {
    register
        .iter()
        .enumerate()
        .fold(0, |acc, (b, q)| acc | (index >> q.0 & 1) << b)
}
