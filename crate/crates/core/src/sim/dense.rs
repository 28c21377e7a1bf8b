use super::ops::{compile, Op};
use super::{check_basis, SimError, PRUNE_EPS};
use crate::circuit::Circuit;

/// Default width cap for the dense backend.
pub const DEFAULT_DENSE_CAP: usize = 26;

/// Full `2^n` real state vector. Reference backend for small circuits.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseState {
    num_qubits: usize,
    amps: Vec<f64>,
}

impl DenseState {
    pub fn basis(num_qubits: usize, index: u128, cap: usize) -> Result<Self, SimError> {
        check_basis(num_qubits, index, cap)?;
        let mut amps = vec![0.0; 1usize << num_qubits];
        amps[index as usize] = 1.0;
        Ok(DenseState { num_qubits, amps })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn amplitudes(&self) -> &[f64] {
        &self.amps
    }

    /// Non-negligible amplitudes as sorted `(index, amplitude)` pairs.
    pub fn branches(&self) -> Vec<(u128, f64)> {
        self.amps
            .iter()
            .enumerate()
            .filter(|(_, a)| a.abs() > PRUNE_EPS)
            .map(|(i, &a)| (i as u128, a))
            .collect()
    }

    pub fn apply(&mut self, circuit: &Circuit) -> Result<(), SimError> {
        if circuit.num_qubits() != self.num_qubits {
            return Err(SimError::WidthMismatch {
                state: self.num_qubits,
                circuit: circuit.num_qubits(),
            });
        }
        for op in compile(circuit)? {
            self.apply_op(&op);
        }
        Ok(())
    }

    fn apply_op(&mut self, op: &Op) {
        let len = self.amps.len();
        match *op {
            Op::Flip { mask, value, target } => {
                let t = target as usize;
                for i in 0..len {
                    if i & t == 0 && (i as u128) & mask == value {
                        self.amps.swap(i, i | t);
                    }
                }
            }
            Op::Swap { a, b } => {
                let (a, b) = (a as usize, b as usize);
                for i in 0..len {
                    if i & a != 0 && i & b == 0 {
                        self.amps.swap(i, i ^ a ^ b);
                    }
                }
            }
            Op::H { bit } => self.hadamard(bit as usize),
            Op::Ry { bit, cos, sin } => self.rotate_ry(bit as usize, cos, sin),
        }
    }

    fn hadamard(&mut self, bit: usize) {
        let r = std::f64::consts::FRAC_1_SQRT_2;
        for i in 0..self.amps.len() {
            if i & bit == 0 {
                let (a0, a1) = (self.amps[i], self.amps[i | bit]);
                self.amps[i] = r * (a0 + a1);
                self.amps[i | bit] = r * (a0 - a1);
            }
        }
    }

    fn rotate_ry(&mut self, bit: usize, c: f64, s: f64) {
        for i in 0..self.amps.len() {
            if i & bit == 0 {
                let (a0, a1) = (self.amps[i], self.amps[i | bit]);
                self.amps[i] = c * a0 - s * a1;
                self.amps[i | bit] = s * a0 + c * a1;
            }
        }
    }
}
