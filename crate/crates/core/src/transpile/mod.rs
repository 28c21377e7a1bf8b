//! Lowering to the native set `{H, X, RY, CNOT, TOFFOLI, SWAP}` with
//! positive controls only.

mod mcx;
mod negative;

pub use mcx::{lower_mcx, LoweringStrategy};
pub use negative::resolve_negative_controls;

use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::builder::{build_machine, BuildError, LayoutMode};
use crate::circuit::{Circuit, CircuitError, GateKind, GateStats};
use crate::machine::MachineSpec;

#[derive(Debug, Error)]
pub enum TranspileError {
    #[error("gate {gate_index} still has a negative control")]
    UnresolvedNegativeControl { gate_index: usize },
    #[error("gate {gate_index} needs {needed} borrowed qubits but only {available} are free")]
    InsufficientAncilla {
        gate_index: usize,
        needed: usize,
        available: usize,
    },
    #[error(transparent)]
    Circuit(#[from] CircuitError),
    #[error(transparent)]
    Build(#[from] BuildError),
}

/// Negative-control resolution followed by MCX lowering.
pub fn transpile(circuit: &Circuit, strategy: LoweringStrategy) -> Result<Circuit, TranspileError> {
    lower_mcx(&resolve_negative_controls(circuit), strategy)
}

/// True when every gate is native and positively controlled.
pub fn is_native(circuit: &Circuit) -> bool {
    circuit
        .gates()
        .iter()
        .all(|g| g.kind() != GateKind::Mcx && !g.has_negative_control())
}

/// Reference gate census of the lowered single-cycle 2-2-1 machine.
pub const REFERENCE_CENSUS: GateStats = GateStats {
    h: 12,
    x: 126,
    ry: 0,
    cnot: 12,
    swap: 1,
    toffoli: 476,
    mcx: 0,
    total: 627,
};

/// Gate counts of a lowered machine next to the reference counts.
#[derive(Debug, Clone, Serialize)]
pub struct CensusReport {
    pub spec: MachineSpec,
    pub strategy: LoweringStrategy,
    pub num_qubits: usize,
    pub counts: GateStats,
    pub reference: GateStats,
}

impl CensusReport {
    /// `(gate, ours, reference, ours - reference)` per gate kind, then total.
    pub fn rows(&self) -> Vec<(&'static str, usize, usize, i64)> {
        let ours = self.counts.by_kind();
        let theirs = self.reference.by_kind();
        let mut rows: Vec<_> = ours
            .iter()
            .zip(theirs.iter())
            .map(|(&(name, a), &(_, b))| (name, a, b, a as i64 - b as i64))
            .collect();
        rows.push((
            "TOTAL",
            self.counts.total,
            self.reference.total,
            self.counts.total as i64 - self.reference.total as i64,
        ));
        rows
    }

    /// The counts that must agree exactly: H and SWAP.
    pub fn structural_match(&self) -> bool {
        self.counts.h == self.reference.h && self.counts.swap == self.reference.swap
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "census for {} ({:?}, {} qubits)", self.spec, self.strategy, self.num_qubits);
        let _ = writeln!(out, "{:<8} {:>6} {:>9} {:>7}", "gate", "ours", "reference", "delta");
        for (name, a, b, d) in self.rows() {
            let _ = writeln!(out, "{name:<8} {a:>6} {b:>9} {d:>+7}");
        }
        out
    }
}

/// The single-cycle 2-2-1 machine on a 12-cell tape with the reference
/// qubit numbering.
pub fn census_spec() -> MachineSpec {
    MachineSpec::relaxed(2, 2, 12, 1).expect("valid reference spec")
}

/// Builds, lowers and counts the reference machine.
pub fn census(strategy: LoweringStrategy) -> Result<CensusReport, TranspileError> {
    let spec = census_spec();
    let (_, circuit) = build_machine(&spec, LayoutMode::PaperCompat)?;
    let lowered = transpile(&circuit, strategy)?;
    Ok(CensusReport {
        spec,
        strategy,
        num_qubits: lowered.num_qubits(),
        counts: lowered.stats(),
        reference: REFERENCE_CENSUS,
    })
}
