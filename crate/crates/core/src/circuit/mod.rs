//! Gate-level circuit IR: polarity-typed controls, named registers,
//! inversion and gate statistics.

mod gate;
mod json;
mod stats;

pub use gate::{Control, Gate, GateKind, Polarity, Qubit};
pub use json::CIRCUIT_JSON_VERSION;
pub use stats::GateStats;

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum CircuitError {
    #[error("{kind} gate with {targets} target(s) and {controls} control(s) violates arity rules")]
    Arity {
        kind: &'static str,
        targets: usize,
        controls: usize,
    },
    #[error("qubit {0} used more than once by a single gate")]
    Overlap(usize),
    #[error("qubit {qubit} out of range for a {num_qubits}-qubit circuit")]
    QubitOutOfRange { qubit: usize, num_qubits: usize },
    #[error("rotation angle must be finite")]
    NonFiniteAngle,
    #[error("register {0:?}: {1}")]
    Register(String, String),
    #[error("circuits have different widths ({0} vs {1})")]
    WidthMismatch(usize, usize),
    #[error("circuit json: {0}")]
    Json(String),
}

/// Named group of qubits. Registers are bookkeeping only; gates address
/// flat indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Register {
    pub name: String,
    pub qubits: Vec<Qubit>,
}

impl Register {
    pub fn new(name: impl Into<String>, qubits: Vec<Qubit>) -> Self {
        Register {
            name: name.into(),
            qubits,
        }
    }

    pub fn width(&self) -> usize {
        self.qubits.len()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    num_qubits: usize,
    registers: Vec<Register>,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(num_qubits: usize) -> Self {
        Circuit {
            num_qubits,
            registers: Vec::new(),
            gates: Vec::new(),
        }
    }

    /// Empty circuit that shares `other`'s width and register map.
    pub fn like(other: &Circuit) -> Self {
        Circuit {
            num_qubits: other.num_qubits,
            registers: other.registers.clone(),
            gates: Vec::new(),
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn registers(&self) -> &[Register] {
        &self.registers
    }

    pub fn register(&self, name: &str) -> Option<&Register> {
        self.registers.iter().find(|r| r.name == name)
    }

    /// Adds register metadata. Registers must be disjoint, uniquely named and in range.
    pub fn add_register(&mut self, register: Register) -> Result<(), CircuitError> {
        if self.register(&register.name).is_some() {
            return Err(CircuitError::Register(register.name, "duplicate name".into()));
        }
        let taken: BTreeSet<Qubit> = self.registers.iter().flat_map(|r| r.qubits.iter().copied()).collect();
        let mut own = BTreeSet::new();
        for &q in &register.qubits {
            if q.0 >= self.num_qubits {
                return Err(CircuitError::Register(register.name, format!("qubit {} out of range", q.0)));
            }
            if taken.contains(&q) || !own.insert(q) {
                return Err(CircuitError::Register(register.name, format!("qubit {} already assigned", q.0)));
            }
        }
        self.registers.push(register);
        Ok(())
    }

    /// Grows the circuit by `extra` qubits, returning the new indices.
    pub fn widen(&mut self, extra: usize) -> Vec<Qubit> {
        let start = self.num_qubits;
        self.num_qubits += extra;
        (start..self.num_qubits).map(Qubit).collect()
    }

    /// Appends a gate after validating it against the circuit width.
    pub fn append(&mut self, gate: Gate) -> Result<(), CircuitError> {
        gate.check(self.num_qubits)?;
        self.gates.push(gate);
        Ok(())
    }

    /// Appends every gate of `other`. Widths must match.
    pub fn extend(&mut self, other: &Circuit) -> Result<(), CircuitError> {
        if other.num_qubits != self.num_qubits {
            return Err(CircuitError::WidthMismatch(self.num_qubits, other.num_qubits));
        }
        self.gates.extend(other.gates.iter().cloned());
        Ok(())
    }

    /// `self` followed by `other`.
    pub fn compose(&self, other: &Circuit) -> Result<Circuit, CircuitError> {
        let mut out = self.clone();
        out.extend(other)?;
        Ok(out)
    }

    /// Gates in reverse order, each replaced by its inverse.
    pub fn inverse(&self) -> Circuit {
        Circuit {
            num_qubits: self.num_qubits,
            registers: self.registers.clone(),
            gates: self.gates.iter().rev().map(Gate::inverse).collect(),
        }
    }

    /// Full re-validation of gates and registers.
    pub fn validate(&self) -> Result<(), CircuitError> {
        for g in &self.gates {
            g.check(self.num_qubits)?;
        }
        let mut probe = Circuit::new(self.num_qubits);
        for r in &self.registers {
            probe.add_register(r.clone())?;
        }
        Ok(())
    }

    pub fn stats(&self) -> GateStats {
        GateStats::of(&self.gates)
    }

    /// Qubits touched by at least one gate.
    pub fn used_qubits(&self) -> BTreeSet<Qubit> {
        self.gates.iter().flat_map(|g| g.qubits()).collect()
    }

    /// Drops qubits no gate touches, renumbering the rest in order.
    ///
    /// Registers keep only surviving qubits. `keep` forces extra qubits to
    /// survive even when idle.
    pub fn compact(&self, keep: &[Qubit]) -> (Circuit, BTreeMap<Qubit, Qubit>) {
        let mut used = self.used_qubits();
        used.extend(keep.iter().copied());
        let map: BTreeMap<Qubit, Qubit> = used.iter().enumerate().map(|(i, &q)| (q, Qubit(i))).collect();
        let registers = self
            .registers
            .iter()
            .map(|r| Register::new(r.name.clone(), r.qubits.iter().filter_map(|q| map.get(q).copied()).collect()))
            .collect();
        let gates = self.gates.iter().map(|g| g.remap(|q| map[&q])).collect();
        (
            Circuit {
                num_qubits: map.len(),
                registers,
                gates,
            },
            map,
        )
    }
}
