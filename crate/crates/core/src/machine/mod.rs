//! Classical semantics of the restricted automaton: description-number codec,
//! step/run emulator and the exhaustive enumerator used as ground truth.

mod emulator;
mod enumerate;
mod program;
mod spec;

pub use emulator::{collapsed_tape, render_tape, run, run_table, step, trace, MachineConfig, Trace};
pub use enumerate::{
    enumerate, records_from_csv, records_to_csv, sample, tape_histogram, EnumerationRecord, DEFAULT_GUARD,
};
pub use program::{decode_program, encode_program, EntryLayout, Move, TransitionEntry, TransitionTable};
pub use spec::{bits_for, MachineSpec, MAX_PROGRAM_BITS};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum MachineError {
    #[error("unsupported machine: {0}")]
    Unsupported(String),
    #[error("tape length {cells} exceeds the causal cone 2t+1 = {}", 2 * .cycles + 1)]
    TapeBound { cells: usize, cycles: usize },
    #[error("program {program} out of range (P = {count})")]
    ProgramOutOfRange { program: u128, count: u128 },
    #[error("transition entry (Q{state}, R{read}) has an out-of-range field")]
    InvalidEntry { state: usize, read: usize },
    #[error("{0}")]
    Range(String),
    #[error("enumeration of {programs} programs exceeds the guard of {guard}")]
    GuardExceeded { programs: u128, guard: u128 },
    #[error("csv: {0}")]
    Csv(String),
}

impl From<csv::Error> for MachineError {
    fn from(e: csv::Error) -> Self {
        MachineError::Csv(e.to_string())
    }
}
