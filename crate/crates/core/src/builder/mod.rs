//! Machine-to-circuit synthesis: qubit layout planning and the gate blocks
//! of one cycle.

mod arith;
mod blocks;
mod layout;

pub use arith::{controlled_increment, modular_increment};
pub use blocks::{
    build_cycle, build_delta, build_init, build_machine_on, build_move, build_read, build_reset, build_write,
};
pub use layout::{move_ancilla_need, plan_layout, LayoutCounts, LayoutMode, QubitLayout};

use thiserror::Error;

use crate::circuit::{Circuit, CircuitError};
use crate::machine::MachineSpec;

#[derive(Debug, Error)]
pub enum BuildError {
    #[error("no reference layout for {0}; use the general mode")]
    PaperCompatUnavailable(MachineSpec),
    #[error("cycle {cycle} out of range for t = {cycles}")]
    CycleOutOfRange { cycle: usize, cycles: usize },
    #[error("cycle {0} has no register for a next state")]
    NoNextState(usize),
    #[error(transparent)]
    Circuit(#[from] CircuitError),
}

/// Plans the layout for `spec` and emits the full machine circuit.
pub fn build_machine(spec: &MachineSpec, mode: LayoutMode) -> Result<(QubitLayout, Circuit), BuildError> {
    let layout = plan_layout(spec, mode)?;
    let circuit = build_machine_on(&layout)?;
    Ok((layout, circuit))
}
