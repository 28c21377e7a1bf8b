use std::collections::BTreeSet;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use super::VerifyError;
use crate::builder::{build_machine, LayoutMode, QubitLayout};
use crate::circuit::{Circuit, Qubit};
use crate::machine::{decode_program, trace, MachineSpec};
use crate::sim::{register_value, SparseState};
use crate::transpile::{transpile, LoweringStrategy};

/// Default ceiling on simulated branches.
pub const DEFAULT_BRANCH_BUDGET: usize = 1 << 16;

/// Allowed deviation of each branch amplitude from `1/sqrt(P)`.
pub const AMPLITUDE_TOLERANCE: f64 = 1e-9;

const MAX_REPORTED_MISMATCHES: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EquivalenceOptions {
    pub mode: LayoutMode,
    pub budget: usize,
    /// Verify the lowered circuit instead of the MCX-level one.
    pub lowering: Option<LoweringStrategy>,
}

impl Default for EquivalenceOptions {
    fn default() -> Self {
        EquivalenceOptions {
            mode: LayoutMode::General,
            budget: DEFAULT_BRANCH_BUDGET,
            lowering: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BranchMismatch {
    pub program: u128,
    pub field: String,
    pub expected: u128,
    pub found: u128,
}

#[derive(Debug, Clone, Serialize)]
pub struct EquivalenceReport {
    pub spec: MachineSpec,
    pub mode: LayoutMode,
    pub lowering: Option<LoweringStrategy>,
    pub num_qubits: usize,
    pub programs: u128,
    /// Description numbers that decode to a valid table.
    pub decodable: u128,
    pub branches: usize,
    /// Branches whose FSM value is not a valid table; not compared.
    pub undecodable: usize,
    pub matched: usize,
    pub tape_matches: usize,
    pub state_matches: usize,
    pub head_matches: usize,
    pub amplitude_uniform: bool,
    pub max_amplitude_error: f64,
    pub mismatch_count: usize,
    pub mismatches: Vec<BranchMismatch>,
}

impl EquivalenceReport {
    pub fn passed(&self) -> bool {
        self.mismatch_count == 0
            && self.amplitude_uniform
            && self.branches as u128 == self.programs
            && self.matched as u128 == self.decodable
    }

    /// `"<matched>/<decodable> branches match"`.
    pub fn summary(&self) -> String {
        let mut s = format!("{}/{} branches match", self.matched, self.decodable);
        if self.undecodable > 0 {
            s.push_str(&format!(" ({} undecodable skipped)", self.undecodable));
        }
        s
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "machine {} ({:?}, {} qubits)", self.spec, self.mode, self.num_qubits);
        if let Some(s) = self.lowering {
            let _ = writeln!(out, "lowered: {s:?}");
        }
        let _ = writeln!(out, "{}", self.summary());
        let _ = writeln!(
            out,
            "tape {} / state {} / head {} of {} compared branches",
            self.tape_matches,
            self.state_matches,
            self.head_matches,
            self.branches - self.undecodable
        );
        let _ = writeln!(out, "max amplitude error {:.3e}", self.max_amplitude_error);
        for m in &self.mismatches {
            let _ = writeln!(
                out,
                "  program {}: {} expected {} found {}",
                m.program, m.field, m.expected, m.found
            );
        }
        if self.mismatch_count > self.mismatches.len() {
            let _ = writeln!(out, "  ... {} more", self.mismatch_count - self.mismatches.len());
        }
        let _ = writeln!(out, "{}", if self.passed() { "PASS" } else { "FAIL" });
        out
    }
}

struct BranchVerdict {
    program: u128,
    decodable: bool,
    tape: bool,
    state: bool,
    head: bool,
    amp_error: f64,
    mismatches: Vec<BranchMismatch>,
}

/// Builds the machine for `spec`, simulates it and compares every branch
/// with the classical run of the program held in its FSM register.
pub fn check_equivalence(spec: &MachineSpec, options: EquivalenceOptions) -> Result<EquivalenceReport, VerifyError> {
    let programs = spec.program_count();
    if programs > options.budget as u128 {
        return Err(VerifyError::BudgetExceeded {
            programs,
            budget: options.budget,
        });
    }
    let (layout, mut circuit) = build_machine(spec, options.mode)?;
    if let Some(strategy) = options.lowering {
        circuit = transpile(&circuit, strategy)?;
    }
    check_circuit(&layout, &circuit, options)
}

/// Same as [`check_equivalence`] for an already built circuit over `layout`.
/// Qubits beyond the layout (a `LOWERING` register) must end at zero.
pub fn check_circuit(
    layout: &QubitLayout,
    circuit: &Circuit,
    options: EquivalenceOptions,
) -> Result<EquivalenceReport, VerifyError> {
    let spec = *layout.spec();
    let programs = spec.program_count();
    let mut state = SparseState::basis(circuit.num_qubits(), 0)?.with_branch_limit(options.budget);
    state.apply(circuit)?;

    let expected_amp = 1.0 / (programs as f64).sqrt();
    let scratch: Vec<Qubit> = layout
        .write()
        .iter()
        .chain(layout.movement())
        .chain(layout.ancilla())
        .copied()
        .chain((layout.num_qubits()..circuit.num_qubits()).map(Qubit))
        .collect();

    let verdicts: Vec<BranchVerdict> = state
        .branches()
        .par_iter()
        .map(|&(index, amp)| check_branch(layout, &scratch, index, amp, expected_amp))
        .collect();

    let distinct: BTreeSet<u128> = verdicts.iter().map(|v| v.program).collect();
    let mut report = EquivalenceReport {
        spec,
        mode: layout.mode(),
        lowering: options.lowering,
        num_qubits: circuit.num_qubits(),
        programs,
        decodable: spec.valid_program_count(),
        branches: verdicts.len(),
        undecodable: 0,
        matched: 0,
        tape_matches: 0,
        state_matches: 0,
        head_matches: 0,
        amplitude_uniform: true,
        max_amplitude_error: 0.0,
        mismatch_count: 0,
        mismatches: Vec::new(),
    };
    if distinct.len() != verdicts.len() {
        report.mismatch_count += 1;
        report.mismatches.push(BranchMismatch {
            program: 0,
            field: "distinct FSM values".into(),
            expected: verdicts.len() as u128,
            found: distinct.len() as u128,
        });
    }
    for v in verdicts {
        report.max_amplitude_error = report.max_amplitude_error.max(v.amp_error);
        if !v.decodable {
            report.undecodable += 1;
            continue;
        }
        report.tape_matches += usize::from(v.tape);
        report.state_matches += usize::from(v.state);
        report.head_matches += usize::from(v.head);
        if v.mismatches.is_empty() {
            report.matched += 1;
        }
        report.mismatch_count += v.mismatches.len();
        for m in v.mismatches {
            if report.mismatches.len() < MAX_REPORTED_MISMATCHES {
                report.mismatches.push(m);
            }
        }
    }
    report.amplitude_uniform = report.max_amplitude_error <= AMPLITUDE_TOLERANCE;
    Ok(report)
}

fn check_branch(layout: &QubitLayout, scratch: &[Qubit], index: u128, amp: f64, expected_amp: f64) -> BranchVerdict {
    let spec = layout.spec();
    let program = register_value(index, layout.fsm());
    let mut verdict = BranchVerdict {
        program,
        decodable: true,
        tape: true,
        state: true,
        head: true,
        amp_error: (amp - expected_amp).abs(),
        mismatches: Vec::new(),
    };
    if verdict.amp_error > AMPLITUDE_TOLERANCE {
        verdict.mismatches.push(BranchMismatch {
            program,
            field: "amplitude off 1/sqrt(P)".into(),
            expected: 0,
            found: 0,
        });
    }
    let (Ok(tr), Ok(table)) = (trace(program, spec), decode_program(program, spec)) else {
        verdict.decodable = false;
        return verdict;
    };
    let mut expect = |field: String, expected: u128, found: u128| -> bool {
        if expected != found {
            verdict.mismatches.push(BranchMismatch {
                program,
                field,
                expected,
                found,
            });
            false
        } else {
            true
        }
    };
    let value = |qs: &[Qubit]| register_value(index, qs);
    let last = tr.last();
    let t = spec.cycles();

    let mut tape_ok = true;
    for (i, &symbol) in last.tape.iter().enumerate() {
        tape_ok &= expect(format!("TAPE[{i}]"), symbol as u128, value(layout.tape_cell(i)));
    }
    let head_ok = expect("HEAD".into(), last.head as u128, value(layout.head()));

    let final_read = if layout.reads_are_distinct() {
        value(layout.read(t - 1)) as usize
    } else {
        tr.reads[t - 1]
    };
    let state_ok = if layout.next_state(t - 1).is_some() {
        expect("STATE".into(), last.state as u128, value(layout.state()))
    } else {
        let current = value(layout.state());
        let ok = expect("STATE".into(), tr.configs[t - 1].state as u128, current);
        let derived = if (current as usize) < spec.states() && final_read < spec.symbols() {
            table.entry(current as usize, final_read).next_state as u128
        } else {
            u128::MAX
        };
        ok & expect("derived final STATE".into(), last.state as u128, derived)
    };

    for k in 0..t {
        if let Some(history) = layout.next_state(k) {
            expect(format!("STATE history {k}"), tr.configs[k].state as u128, value(history));
        }
    }
    if layout.reads_are_distinct() {
        for k in 0..t {
            expect(format!("READ[{k}]"), tr.reads[k] as u128, value(layout.read(k)));
        }
    } else {
        let folded = tr.reads.iter().fold(0, |acc, &r| acc ^ r) as u128;
        expect("READ (shared)".into(), folded, value(layout.read(0)));
    }
    for &q in scratch {
        expect(format!("scratch {q}"), 0, index >> q.0 & 1);
    }

    verdict.tape = tape_ok;
    verdict.head = head_ok;
    verdict.state = state_ok;
    verdict
}
