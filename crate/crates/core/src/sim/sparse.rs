use std::collections::HashMap;

use rayon::prelude::*;

use super::ops::{compile, Op};
use super::{check_basis, SimError, PRUNE_EPS};
use crate::circuit::Circuit;

/// Real-amplitude state stored as `(basis index, amplitude)` pairs.
///
/// Qubit `i` is bit `i` of the index. Permutation gates relabel branches in
/// place; H and RY split them and merge equal indices.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseState {
    num_qubits: usize,
    branches: Vec<(u128, f64)>,
    max_branches: Option<usize>,
}

impl SparseState {
    /// `|index>` over `num_qubits` qubits.
    pub fn basis(num_qubits: usize, index: u128) -> Result<Self, SimError> {
        check_basis(num_qubits, index, super::ops::MAX_SPARSE_QUBITS)?;
        Ok(SparseState {
            num_qubits,
            branches: vec![(index, 1.0)],
            max_branches: None,
        })
    }

    /// Refuse to grow beyond `limit` branches.
    pub fn with_branch_limit(mut self, limit: usize) -> Self {
        self.max_branches = Some(limit);
        self
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    /// Branches sorted by index.
    pub fn branches(&self) -> &[(u128, f64)] {
        &self.branches
    }

    pub fn into_branches(self) -> Vec<(u128, f64)> {
        self.branches
    }

    pub fn len(&self) -> usize {
        self.branches.len()
    }

    pub fn is_empty(&self) -> bool {
        self.branches.is_empty()
    }

    pub fn amplitude(&self, index: u128) -> f64 {
        self.branches
            .binary_search_by_key(&index, |b| b.0)
            .map_or(0.0, |i| self.branches[i].1)
    }

    pub fn norm_sqr(&self) -> f64 {
        self.branches.iter().map(|b| b.1 * b.1).sum()
    }

    /// Runs `circuit`, which must have the same width as the state.
    pub fn apply(&mut self, circuit: &Circuit) -> Result<(), SimError> {
        if circuit.num_qubits() != self.num_qubits {
            return Err(SimError::WidthMismatch {
                state: self.num_qubits,
                circuit: circuit.num_qubits(),
            });
        }
        let ops = compile(circuit)?;
        let mut i = 0;
        while i < ops.len() {
            let run = ops[i..].iter().take_while(|op| op.is_permutation()).count();
            if run > 0 {
                let segment = &ops[i..i + run];
                self.branches.par_iter_mut().for_each(|(index, _)| {
                    for op in segment {
                        *index = op.permute(*index);
                    }
                });
                i += run;
            } else {
                self.split(&ops[i])?;
                i += 1;
            }
        }
        self.branches.par_sort_unstable_by_key(|b| b.0);
        Ok(())
    }

    fn split(&mut self, op: &Op) -> Result<(), SimError> {
        let (bit, c, s) = match *op {
            Op::H { bit } => (bit, std::f64::consts::FRAC_1_SQRT_2, std::f64::consts::FRAC_1_SQRT_2),
            Op::Ry { bit, cos, sin } => (bit, cos, sin),
            _ => unreachable!("permutations are applied in segments"),
        };
        let hadamard = matches!(op, Op::H { .. });
        let mut merged: HashMap<u128, f64> = HashMap::with_capacity(self.branches.len() * 2);
        for &(index, amp) in &self.branches {
            let zero = index & !bit;
            let one = index | bit;
            let (to_zero, to_one) = match (index & bit != 0, hadamard) {
                (false, _) => (c * amp, s * amp),
                (true, true) => (c * amp, -s * amp),
                (true, false) => (-s * amp, c * amp),
            };
            *merged.entry(zero).or_insert(0.0) += to_zero;
            *merged.entry(one).or_insert(0.0) += to_one;
        }
        self.branches = merged.into_iter().filter(|b| b.1.abs() > PRUNE_EPS).collect();
        self.branches.sort_unstable_by_key(|b| b.0);
        if let Some(limit) = self.max_branches {
            if self.branches.len() > limit {
                return Err(SimError::BranchLimit {
                    branches: self.branches.len(),
                    limit,
                });
            }
        }
        Ok(())
    }
}
