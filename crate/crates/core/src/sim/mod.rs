//! Real-amplitude state-vector simulation: a sparse branch map for wide
//! circuits with few live branches and a dense vector for cross-checks.

mod dense;
mod ops;
mod sparse;

pub use dense::{DenseState, DEFAULT_DENSE_CAP};
pub use ops::MAX_SPARSE_QUBITS;
pub use sparse::SparseState;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::circuit::{Circuit, Qubit};

/// Amplitudes at or below this magnitude are dropped after a split.
pub const PRUNE_EPS: f64 = 1e-12;

#[derive(Debug, Error, PartialEq)]
pub enum SimError {
    #[error("{qubits} qubits exceeds the backend limit of {limit}")]
    TooManyQubits { qubits: usize, limit: usize },
    #[error("basis index {index} does not fit in {qubits} qubits")]
    BasisOutOfRange { index: u128, qubits: usize },
    #[error("state has {state} qubits but the circuit has {circuit}")]
    WidthMismatch { state: usize, circuit: usize },
    #[error("state grew to {branches} branches, over the limit of {limit}")]
    BranchLimit { branches: usize, limit: usize },
}

pub(crate) fn check_basis(num_qubits: usize, index: u128, limit: usize) -> Result<(), SimError> {
    if num_qubits > limit {
        return Err(SimError::TooManyQubits {
            qubits: num_qubits,
            limit,
        });
    }
    if num_qubits < 128 && index >> num_qubits != 0 {
        return Err(SimError::BasisOutOfRange {
            index,
            qubits: num_qubits,
        });
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Backend {
    #[default]
    Sparse,
    Dense,
}

impl std::str::FromStr for Backend {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "sparse" => Ok(Backend::Sparse),
            "dense" => Ok(Backend::Dense),
            other => Err(format!("unknown backend {other:?} (expected sparse or dense)")),
        }
    }
}

/// Final state of a run as sorted, non-negligible `(index, amplitude)` pairs.
#[derive(Debug, Clone, PartialEq)]
pub struct SimOutcome {
    pub num_qubits: usize,
    pub branches: Vec<(u128, f64)>,
}

/// Runs `circuit` from basis state `initial`.
pub fn simulate(circuit: &Circuit, backend: Backend, initial: u128) -> Result<SimOutcome, SimError> {
    let n = circuit.num_qubits();
    let branches = match backend {
        Backend::Sparse => {
            let mut s = SparseState::basis(n, initial)?;
            s.apply(circuit)?;
            s.into_branches()
        }
        Backend::Dense => {
            let mut s = DenseState::basis(n, initial, DEFAULT_DENSE_CAP)?;
            s.apply(circuit)?;
            s.branches()
        }
    };
    Ok(SimOutcome { num_qubits: n, branches })
}

impl SimOutcome {
    pub fn norm_sqr(&self) -> f64 {
        self.branches.iter().map(|b| b.1 * b.1).sum()
    }

    /// Probability of each value of `register` (bit `b` of the value is
    /// `register[b]`).
    pub fn marginal(&self, register: &[Qubit]) -> Distribution {
        let mut probabilities = BTreeMap::new();
        for &(index, amp) in &self.branches {
            *probabilities.entry(register_value(index, register)).or_insert(0.0) += amp * amp;
        }
        Distribution {
            width: register.len(),
            probabilities,
        }
    }

    /// Largest amplitude difference against `other`, over the union of branches.
    pub fn max_difference(&self, other: &SimOutcome) -> f64 {
        let a: BTreeMap<u128, f64> = self.branches.iter().copied().collect();
        let b: BTreeMap<u128, f64> = other.branches.iter().copied().collect();
        a.keys()
            .chain(b.keys())
            .map(|k| (a.get(k).unwrap_or(&0.0) - b.get(k).unwrap_or(&0.0)).abs())
            .fold(0.0, f64::max)
    }

    /// JSON listing of the branches, bit strings most-significant qubit first.
    pub fn to_json(&self) -> serde_json::Value {
        let branches: Vec<serde_json::Value> = self
            .branches
            .iter()
            .map(|&(index, amp)| {
                serde_json::json!({
                    "index": index.to_string(),
                    "bits": bitstring(index, self.num_qubits),
                    "amplitude": amp,
                })
            })
            .collect();
        serde_json::json!({"num_qubits": self.num_qubits, "branches": branches})
    }
}

/// Value held by `register` in basis state `index`.
pub fn register_value(index: u128, register: &[Qubit]) -> u128 {
    register
        .iter()
        .enumerate()
        .fold(0, |acc, (b, q)| acc | ((index >> q.0) & 1) << b)
}

/// `value` as `width` binary digits, most significant first.
pub fn bitstring(value: u128, width: usize) -> String {
    (0..width).rev().map(|b| if value >> b & 1 == 1 { '1' } else { '0' }).collect()
}

/// Probability distribution over the values of one register.
#[derive(Debug, Clone, PartialEq)]
pub struct Distribution {
    pub width: usize,
    pub probabilities: BTreeMap<u128, f64>,
}

impl Distribution {
    pub fn get(&self, value: u128) -> f64 {
        self.probabilities.get(&value).copied().unwrap_or(0.0)
    }

    pub fn total(&self) -> f64 {
        self.probabilities.values().sum()
    }

    /// `(bit string, probability)` rows in value order.
    pub fn rows(&self) -> Vec<(String, f64)> {
        self.probabilities
            .iter()
            .map(|(&v, &p)| (bitstring(v, self.width), p))
            .collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let map: serde_json::Map<String, serde_json::Value> =
            self.rows().into_iter().map(|(k, p)| (k, serde_json::json!(p))).collect();
        serde_json::Value::Object(map)
    }
}
