//! Quantum parallel universal linear bounded automata: classical reference
//! semantics, circuit synthesis, lowering, simulation and verification.
//!
//! The pipeline is `machine` (what a program does) → `builder` (the
//! reversible circuit running every program at once) → `transpile` (native
//! gates) → `sim` / `qasm` (run or export) → `verify` (compare the two).

pub mod builder;
pub mod circuit;
pub mod machine;
pub mod qasm;
pub mod sim;
pub mod transpile;
pub mod verify;

pub use builder::{build_machine, plan_layout, BuildError, LayoutMode, QubitLayout};
pub use circuit::{Circuit, CircuitError, Control, Gate, GateKind, GateStats, Polarity, Qubit, Register};
pub use machine::{
    decode_program, encode_program, enumerate, run, sample, MachineConfig, MachineError, MachineSpec, Move,
    TransitionEntry, TransitionTable,
};
pub use qasm::{emit_qasm, QasmError};
pub use sim::{simulate, Backend, DenseState, SimError, SimOutcome, SparseState};
pub use transpile::{transpile, LoweringStrategy, TranspileError};
pub use verify::{check_block, check_equivalence, BlockKind, EquivalenceOptions, EquivalenceReport, VerifyError};
