use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::BuildError;
use crate::circuit::{Circuit, Qubit, Register};
use crate::machine::MachineSpec;

/// How qubits are numbered.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LayoutMode {
    /// Fresh READ and next-STATE registers for every cycle.
    General,
    /// The reference flat indexing for the 2-2-1 single-cycle and 1-2-1
    /// four-cycle machines. Any other spec is rejected.
    PaperCompat,
}

/// Register widths of a planned layout.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LayoutCounts {
    pub q_delta: usize,
    pub q_state: usize,
    pub q_move: usize,
    pub q_head: usize,
    pub q_read: usize,
    pub q_write: usize,
    pub q_tape: usize,
    pub q_ch: usize,
    pub q_a: usize,
    pub total: usize,
}

impl LayoutCounts {
    /// Sum of every term except the ancilla pool.
    pub fn without_ancilla(&self) -> usize {
        self.total - self.q_a
    }

    /// Closed-form widths for `spec` given an ancilla pool of `q_a` qubits.
    pub fn formula(spec: &MachineSpec, q_a: usize) -> Self {
        let q_state = spec.state_bits();
        let q_read = spec.symbol_bits();
        let mut counts = LayoutCounts {
            q_delta: spec.delta_bits(),
            q_state,
            q_move: spec.move_bits(),
            q_head: spec.head_bits(),
            q_read,
            q_write: spec.symbol_bits(),
            q_tape: spec.cells() * spec.symbol_bits(),
            q_ch: (spec.cycles() - 1) * (q_state + q_read),
            q_a,
            total: 0,
        };
        counts.total = counts.q_delta
            + counts.q_state
            + counts.q_move
            + counts.q_head
            + counts.q_read
            + counts.q_write
            + counts.q_tape
            + counts.q_ch
            + counts.q_a;
        counts
    }
}

/// Ancilla qubits the move block needs for a `head_bits`-wide head on a
/// `cells`-long tape: a carry chain without its top carry, plus one wrap
/// flag when `cells` is not a power of two.
pub fn move_ancilla_need(head_bits: usize, cells: usize) -> (usize, usize) {
    let carries = head_bits.saturating_sub(2);
    let wrap = usize::from(!cells.is_power_of_two());
    (carries, wrap)
}

/// Assignment of machine roles to flat qubit indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QubitLayout {
    spec: MachineSpec,
    mode: LayoutMode,
    num_qubits: usize,
    fsm: Vec<Qubit>,
    states: Vec<Vec<Qubit>>,
    movement: Vec<Qubit>,
    head: Vec<Qubit>,
    reads: Vec<Vec<Qubit>>,
    write: Vec<Qubit>,
    tape: Vec<Qubit>,
    ancilla: Vec<Qubit>,
    carries: Vec<Qubit>,
    wrap: Option<Qubit>,
}

struct Allocator(usize);

impl Allocator {
    fn take(&mut self, n: usize) -> Vec<Qubit> {
        let out = (self.0..self.0 + n).map(Qubit).collect();
        self.0 += n;
        out
    }
}

/// Plans the qubit layout for `spec`.
pub fn plan_layout(spec: &MachineSpec, mode: LayoutMode) -> Result<QubitLayout, BuildError> {
    let t = spec.cycles();
    let (state_regs, distinct_reads, pool_floor) = match mode {
        LayoutMode::General => (t, t, 0),
        LayoutMode::PaperCompat => compat_shape(spec)?,
    };
    let q_state = spec.state_bits();
    let q_sym = spec.symbol_bits();
    let mut alloc = Allocator(0);

    let fsm = alloc.take(spec.delta_bits());
    let states = (0..state_regs).map(|_| alloc.take(q_state)).collect();
    let movement = alloc.take(spec.move_bits());
    let head = alloc.take(spec.head_bits());
    let distinct: Vec<Vec<Qubit>> = (0..distinct_reads).map(|_| alloc.take(q_sym)).collect();
    let reads = (0..t).map(|k| distinct[k.min(distinct_reads - 1)].clone()).collect();
    let write = alloc.take(q_sym);
    let tape = alloc.take(spec.cells() * q_sym);

    let (carry_count, wrap_count) = move_ancilla_need(spec.head_bits(), spec.cells());
    let pool = (carry_count + wrap_count).max(pool_floor);
    let ancilla = alloc.take(pool);
    let carries = ancilla[..carry_count].to_vec();
    let wrap = (wrap_count == 1).then(|| ancilla[carry_count]);

    Ok(QubitLayout {
        spec: *spec,
        mode,
        num_qubits: alloc.0,
        fsm,
        states,
        movement,
        head,
        reads,
        write,
        tape,
        ancilla,
        carries,
        wrap,
    })
}

/// `(state registers, distinct read registers, ancilla pool size)` for the
/// two reference layouts.
fn compat_shape(spec: &MachineSpec) -> Result<(usize, usize, usize), BuildError> {
    match (spec.states(), spec.symbols(), spec.cells(), spec.cycles()) {
        (2, 2, 12, 1) => Ok((2, 1, 3)),
        (1, 2, 4, 4) => Ok((4, 1, 3)),
        _ => Err(BuildError::PaperCompatUnavailable(*spec)),
    }
}

impl QubitLayout {
    pub fn spec(&self) -> &MachineSpec {
        &self.spec
    }

    pub fn mode(&self) -> LayoutMode {
        self.mode
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn fsm(&self) -> &[Qubit] {
        &self.fsm
    }

    /// Canonical current-state register.
    pub fn state(&self) -> &[Qubit] {
        &self.states[0]
    }

    /// Every state register, canonical first.
    pub fn state_chain(&self) -> &[Vec<Qubit>] {
        &self.states
    }

    /// Register that receives the next state during `cycle`, if one exists.
    /// After that cycle's reset it holds the state the cycle started in.
    pub fn next_state(&self, cycle: usize) -> Option<&[Qubit]> {
        self.states.get(cycle + 1).map(Vec::as_slice)
    }

    pub fn movement(&self) -> &[Qubit] {
        &self.movement
    }

    pub fn head(&self) -> &[Qubit] {
        &self.head
    }

    /// READ register used by `cycle`.
    pub fn read(&self, cycle: usize) -> &[Qubit] {
        &self.reads[cycle]
    }

    /// True when every cycle has its own READ register.
    pub fn reads_are_distinct(&self) -> bool {
        self.reads.windows(2).all(|w| w[0] != w[1] || w[0].is_empty())
    }

    pub fn write(&self) -> &[Qubit] {
        &self.write
    }

    pub fn tape(&self) -> &[Qubit] {
        &self.tape
    }

    /// Qubits holding cell `i`, least-significant symbol bit first.
    pub fn tape_cell(&self, i: usize) -> &[Qubit] {
        let w = self.spec.symbol_bits();
        &self.tape[i * w..(i + 1) * w]
    }

    pub fn ancilla(&self) -> &[Qubit] {
        &self.ancilla
    }

    pub fn carries(&self) -> &[Qubit] {
        &self.carries
    }

    pub fn wrap(&self) -> Option<Qubit> {
        self.wrap
    }

    /// The eight role registers, each flattened, in allocation order.
    pub fn registers(&self) -> Vec<Register> {
        let mut reads: Vec<Qubit> = Vec::new();
        for r in &self.reads {
            for q in r {
                if !reads.contains(q) {
                    reads.push(*q);
                }
            }
        }
        vec![
            Register::new("FSM", self.fsm.clone()),
            Register::new("STATE", self.states.concat()),
            Register::new("MOVE", self.movement.clone()),
            Register::new("HEAD", self.head.clone()),
            Register::new("READ", reads),
            Register::new("WRITE", self.write.clone()),
            Register::new("TAPE", self.tape.clone()),
            Register::new("ANCILLA", self.ancilla.clone()),
        ]
    }

    /// Empty circuit over this layout, with register metadata attached.
    pub fn empty_circuit(&self) -> Circuit {
        let mut c = Circuit::new(self.num_qubits);
        for r in self.registers() {
            c.add_register(r).expect("layout registers are disjoint");
        }
        c
    }

    /// Widths actually allocated. History is everything in the state and
    /// read chains beyond the first register of each.
    pub fn counts(&self) -> LayoutCounts {
        let regs = self.registers();
        let width = |name: &str| regs.iter().find(|r| r.name == name).map_or(0, Register::width);
        let q_state = self.state().len();
        let q_read = self.reads[0].len();
        let q_ch = width("STATE") + width("READ") - q_state - q_read;
        LayoutCounts {
            q_delta: self.fsm.len(),
            q_state,
            q_move: self.movement.len(),
            q_head: self.head.len(),
            q_read,
            q_write: self.write.len(),
            q_tape: self.tape.len(),
            q_ch,
            q_a: self.ancilla.len(),
            total: self.num_qubits,
        }
    }

    /// Text listing: one line per register, then the derived widths.
    pub fn report(&self) -> String {
        let s = &self.spec;
        let mut out = String::new();
        let _ = writeln!(
            out,
            "Number of {}-state {}-symbol {}-dimension QPULBA: {}",
            s.states(),
            s.symbols(),
            s.dims(),
            s.program_count()
        );
        let _ = writeln!(out, "cells: {}, cycles: {}, mode: {:?}", s.cells(), s.cycles(), self.mode);
        out.push('\n');
        for r in self.registers() {
            let list: Vec<String> = r.qubits.iter().map(|q| q.0.to_string()).collect();
            let _ = writeln!(out, "{:<8}: [{}]", r.name, list.join(", "));
        }
        let c = self.counts();
        out.push('\n');
        let _ = writeln!(
            out,
            "q_delta = {}, q_state = {}, q_move = {}, q_head = {}, q_read = {}, q_write = {}, q_tape = {}, q_ch = {}, q_a = {}",
            c.q_delta, c.q_state, c.q_move, c.q_head, c.q_read, c.q_write, c.q_tape, c.q_ch, c.q_a
        );
        let _ = writeln!(
            out,
            "{}+{}+{}+{}+{}+{}+{}+{}+q_a",
            c.q_delta, c.q_state, c.q_move, c.q_head, c.q_read, c.q_write, c.q_tape, c.q_ch
        );
        let _ = writeln!(out, "total: {} + q_a = {} (q_a = {})", c.without_ancilla(), c.total, c.q_a);
        out
    }

    /// JSON form of [`QubitLayout::report`].
    pub fn report_json(&self) -> serde_json::Value {
        let registers: Vec<serde_json::Value> = self
            .registers()
            .into_iter()
            .map(|r| serde_json::json!({"name": r.name, "qubits": r.qubits}))
            .collect();
        serde_json::json!({
            "spec": self.spec,
            "mode": self.mode,
            "programs": self.spec.program_count().to_string(),
            "registers": registers,
            "counts": self.counts(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn indices(qs: &[Qubit]) -> Vec<usize> {
        qs.iter().map(|q| q.0).collect()
    }

    #[test]
    fn compat_single_cycle_listing() {
        let spec = MachineSpec::relaxed(2, 2, 12, 1).unwrap();
        let l = plan_layout(&spec, LayoutMode::PaperCompat).unwrap();
        assert_eq!(l.num_qubits(), 36);
        let regs = l.registers();
        let expect: [(&str, Vec<usize>); 8] = [
            ("FSM", (0..12).collect()),
            ("STATE", vec![12, 13]),
            ("MOVE", vec![14]),
            ("HEAD", vec![15, 16, 17, 18]),
            ("READ", vec![19]),
            ("WRITE", vec![20]),
            ("TAPE", (21..33).collect()),
            ("ANCILLA", vec![33, 34, 35]),
        ];
        for (r, (name, qs)) in regs.iter().zip(expect) {
            assert_eq!(r.name, name);
            assert_eq!(indices(&r.qubits), qs, "{name}");
        }
        assert_eq!(indices(l.carries()), vec![33, 34]);
        assert_eq!(l.wrap(), Some(Qubit(35)));
    }

    #[test]
    fn compat_four_cycle_listing() {
        let spec = MachineSpec::program_sized(1, 2).unwrap();
        let l = plan_layout(&spec, LayoutMode::PaperCompat).unwrap();
        assert_eq!(l.num_qubits(), 16);
        let regs = l.registers();
        let got: Vec<(String, Vec<usize>)> = regs.iter().map(|r| (r.name.clone(), indices(&r.qubits))).collect();
        assert_eq!(
            got,
            vec![
                ("FSM".to_string(), vec![0, 1, 2, 3]),
                ("STATE".to_string(), vec![]),
                ("MOVE".to_string(), vec![4]),
                ("HEAD".to_string(), vec![5, 6]),
                ("READ".to_string(), vec![7]),
                ("WRITE".to_string(), vec![8]),
                ("TAPE".to_string(), vec![9, 10, 11, 12]),
                ("ANCILLA".to_string(), vec![13, 14, 15]),
            ]
        );
        assert!(!l.reads_are_distinct());
        assert_eq!(l.read(3), l.read(0));
    }

    #[test]
    fn paper_compat_rejects_other_specs() {
        let spec = MachineSpec::program_sized(2, 2).unwrap();
        assert!(matches!(
            plan_layout(&spec, LayoutMode::PaperCompat),
            Err(BuildError::PaperCompatUnavailable(_))
        ));
    }

    #[test]
    fn general_two_state_binary_matches_formula() {
        let spec = MachineSpec::program_sized(2, 2).unwrap();
        let l = plan_layout(&spec, LayoutMode::General).unwrap();
        let c = l.counts();
        assert_eq!(
            [c.q_delta, c.q_state, c.q_move, c.q_head, c.q_read, c.q_write, c.q_tape, c.q_ch],
            [12, 1, 1, 4, 1, 1, 12, 22]
        );
        assert_eq!(c.without_ancilla(), 54);
        assert_eq!(c.q_a, 3);
        assert_eq!(c, LayoutCounts::formula(&spec, c.q_a));
        assert!(l.report().contains("total: 54 + q_a = 57 (q_a = 3)"));
    }

    #[test]
    fn general_one_state_binary_adds_history_reads() {
        let spec = MachineSpec::program_sized(1, 2).unwrap();
        let l = plan_layout(&spec, LayoutMode::General).unwrap();
        let c = l.counts();
        assert_eq!(c.q_ch, 3);
        assert_eq!(c.q_state, 0);
        assert_eq!(c.q_a, 0);
        assert_eq!(c.total, 13 + 3);
        assert!(l.reads_are_distinct());
    }

    #[test]
    fn registers_partition_every_qubit() {
        for (m, n) in [(1, 1), (2, 1), (1, 2), (2, 2), (3, 3)] {
            let spec = MachineSpec::new(m, n, 5, 3).unwrap();
            let l = plan_layout(&spec, LayoutMode::General).unwrap();
            let c = l.empty_circuit();
            let covered: usize = c.registers().iter().map(Register::width).sum();
            assert_eq!(covered, l.num_qubits());
            assert_eq!(l.counts(), LayoutCounts::formula(&spec, l.counts().q_a));
        }
    }
}
