//! Branch-by-branch comparison of the simulated machine against the
//! classical emulator, and a seeded harness for the individual blocks.

mod blocktest;
mod equivalence;

pub use blocktest::{
    build_block_test, check_block, BlockKind, BlockObservation, BlockTest, BlockTestReport, BACKEND_TOLERANCE,
    DENSE_CHECK_LIMIT,
};
pub use equivalence::{
    check_circuit, check_equivalence, BranchMismatch, EquivalenceOptions, EquivalenceReport, AMPLITUDE_TOLERANCE,
    DEFAULT_BRANCH_BUDGET,
};

use thiserror::Error;

use crate::builder::BuildError;
use crate::circuit::CircuitError;
use crate::sim::SimError;
use crate::transpile::TranspileError;

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("{programs} programs exceed the branch budget of {budget}")]
    BudgetExceeded { programs: u128, budget: usize },
    #[error(transparent)]
    Build(#[from] BuildError),
    #[error(transparent)]
    Transpile(#[from] TranspileError),
    #[error(transparent)]
    Sim(#[from] SimError),
    #[error(transparent)]
    Circuit(#[from] CircuitError),
}
