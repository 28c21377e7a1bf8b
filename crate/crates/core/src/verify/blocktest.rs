use std::collections::BTreeMap;
use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::VerifyError;
use crate::builder::{
    build_delta, build_init, build_move, build_read, build_reset, build_write, plan_layout, LayoutMode, QubitLayout,
};
use crate::circuit::{Circuit, Gate, Qubit, Register};
use crate::machine::{EntryLayout, MachineSpec};
use crate::sim::{register_value, simulate, Backend, SimOutcome};

/// Circuits at or below this width are also run on the dense backend.
pub const DENSE_CHECK_LIMIT: usize = 20;

/// Tolerance for the sparse against dense comparison.
pub const BACKEND_TOLERANCE: f64 = 1e-10;

const MAX_REPORTED: usize = 32;
const MAX_PAIRS: usize = 256;

/// Margin kept away from 0, pi/2 and pi when drawing rotation angles.
const ANGLE_MARGIN: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BlockKind {
    Init,
    Read,
    Delta,
    Write,
    Move,
    Reset,
}

impl BlockKind {
    pub const ALL: [BlockKind; 6] = [
        BlockKind::Init,
        BlockKind::Read,
        BlockKind::Delta,
        BlockKind::Write,
        BlockKind::Move,
        BlockKind::Reset,
    ];
}

impl std::str::FromStr for BlockKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "init" => Ok(BlockKind::Init),
            "read" => Ok(BlockKind::Read),
            "delta" => Ok(BlockKind::Delta),
            "write" => Ok(BlockKind::Write),
            "move" => Ok(BlockKind::Move),
            "reset" => Ok(BlockKind::Reset),
            other => Err(format!("unknown block {other:?}")),
        }
    }
}

/// A block wrapped in its test harness, compacted to the qubits it uses.
///
/// `roles` maps role names (`HEAD`, `TAPE`, `READ`, `WRITE`, `MOVE`,
/// `STATE`, `NEXT`, `FSM`, `ANCILLA`, `TEST`) to qubits of `circuit`.
#[derive(Debug, Clone)]
pub struct BlockTest {
    pub block: BlockKind,
    pub spec: MachineSpec,
    pub circuit: Circuit,
    pub roles: BTreeMap<String, Vec<Qubit>>,
    pub angles: Vec<f64>,
}

impl BlockTest {
    pub fn role(&self, name: &str) -> &[Qubit] {
        self.roles.get(name).map_or(&[], Vec::as_slice)
    }

    /// Qubits of the test register that snapshot the block's target.
    pub fn test_qubits(&self) -> usize {
        self.role("TEST").len()
    }
}

fn draw_angle(rng: &mut ChaCha8Rng) -> f64 {
    loop {
        let theta = rng.gen_range(ANGLE_MARGIN..PI - ANGLE_MARGIN);
        if (theta - FRAC_PI_2).abs() >= ANGLE_MARGIN {
            return theta;
        }
    }
}

struct Plan {
    inputs: Vec<Qubit>,
    prep: Option<Circuit>,
    snapshot: Vec<Qubit>,
    block: Circuit,
}

fn plan(block: BlockKind, layout: &QubitLayout) -> Result<Plan, VerifyError> {
    let computes_next = layout.next_state(0).is_some();
    let next: Vec<Qubit> = layout.next_state(0).map(<[Qubit]>::to_vec).unwrap_or_default();
    let cat = |parts: &[&[Qubit]]| parts.concat();
    let plan = match block {
        BlockKind::Init => Plan {
            inputs: vec![],
            prep: None,
            snapshot: vec![],
            block: build_init(layout)?,
        },
        BlockKind::Read => Plan {
            inputs: cat(&[layout.head(), layout.tape()]),
            prep: None,
            snapshot: layout.read(0).to_vec(),
            block: build_read(layout, 0)?,
        },
        BlockKind::Delta => Plan {
            inputs: cat(&[layout.fsm(), layout.state(), layout.read(0)]),
            prep: None,
            snapshot: cat(&[layout.write(), layout.movement(), &next]),
            block: build_delta(layout, 0, computes_next)?,
        },
        BlockKind::Write => Plan {
            inputs: cat(&[layout.head(), layout.tape(), layout.write()]),
            prep: Some(build_read(layout, 0)?),
            snapshot: layout.tape().to_vec(),
            block: build_write(layout, 0)?,
        },
        BlockKind::Move => Plan {
            inputs: cat(&[layout.movement(), layout.head()]),
            prep: None,
            snapshot: layout.head().to_vec(),
            block: build_move(layout)?,
        },
        BlockKind::Reset => Plan {
            inputs: cat(&[layout.fsm(), layout.state(), layout.read(0)]),
            prep: Some(build_delta(layout, 0, computes_next)?),
            snapshot: layout.state().to_vec(),
            block: build_reset(layout, 0)?,
        },
    };
    Ok(plan)
}

/// Seeded RY rotations on the block's inputs, an optional preparation
/// block, a CNOT snapshot of the target register onto `TEST`, then the
/// block itself. Uses the general layout and cycle 0.
pub fn build_block_test(block: BlockKind, spec: &MachineSpec, seed: u64) -> Result<BlockTest, VerifyError> {
    let layout = plan_layout(spec, LayoutMode::General)?;
    let p = plan(block, &layout)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut c = layout.empty_circuit();
    let test = c.widen(p.snapshot.len());
    c.add_register(Register::new("TEST", test.clone()))?;
    let mut angles = Vec::with_capacity(p.inputs.len());
    for &q in &p.inputs {
        let theta = draw_angle(&mut rng);
        angles.push(theta);
        c.append(Gate::ry(q, theta))?;
    }
    // Block circuits are narrower than the harness by the TEST register.
    for g in p.prep.iter().flat_map(Circuit::gates) {
        c.append(g.clone())?;
    }
    for (&src, &dst) in p.snapshot.iter().zip(&test) {
        c.append(Gate::cnot(src, dst))?;
    }
    for g in p.block.gates() {
        c.append(g.clone())?;
    }

    let next = layout.next_state(0).unwrap_or(&[]);
    let full_roles: Vec<(&str, &[Qubit])> = vec![
        ("FSM", layout.fsm()),
        ("STATE", layout.state()),
        ("NEXT", next),
        ("MOVE", layout.movement()),
        ("HEAD", layout.head()),
        ("READ", layout.read(0)),
        ("WRITE", layout.write()),
        ("TAPE", layout.tape()),
        ("ANCILLA", layout.ancilla()),
        ("TEST", &test),
    ];
    let used = c.used_qubits();
    let keep: Vec<Qubit> = full_roles
        .iter()
        .filter(|(name, qs)| qs.iter().any(|q| used.contains(q)) || *name == "TEST")
        .flat_map(|(_, qs)| qs.iter().copied())
        .collect();
    let (circuit, map) = c.compact(&keep);
    let roles = full_roles
        .into_iter()
        .filter(|(_, qs)| !qs.is_empty() && qs.iter().all(|q| map.contains_key(q)))
        .map(|(name, qs)| (name.to_string(), qs.iter().map(|q| map[q]).collect()))
        .collect();
    Ok(BlockTest {
        block,
        spec: *spec,
        circuit,
        roles,
        angles,
    })
}

/// One observed branch: the snapshot taken before the block and the target
/// register after it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BlockObservation {
    pub old: u128,
    pub new: u128,
}

#[derive(Debug, Clone, Serialize)]
pub struct BlockTestReport {
    pub block: BlockKind,
    pub spec: MachineSpec,
    pub trials: usize,
    pub num_qubits: usize,
    pub test_qubits: usize,
    pub branches_checked: usize,
    pub out_of_domain: usize,
    pub distinct_inputs: usize,
    pub dense_checked: bool,
    pub max_backend_difference: f64,
    pub failure_count: usize,
    pub failures: Vec<String>,
    pub pairs: Vec<BlockObservation>,
}

impl BlockTestReport {
    pub fn passed(&self) -> bool {
        self.failure_count == 0 && self.max_backend_difference <= BACKEND_TOLERANCE
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{:?} block on {}: {} circuit + {} test qubits, {} trial(s)",
            self.block,
            self.spec,
            self.num_qubits - self.test_qubits,
            self.test_qubits,
            self.trials
        );
        let _ = writeln!(
            out,
            "{} branches checked, {} distinct inputs, {} outside the head range",
            self.branches_checked, self.distinct_inputs, self.out_of_domain
        );
        if self.dense_checked {
            let _ = writeln!(out, "dense cross-check max difference {:.3e}", self.max_backend_difference);
        }
        for f in &self.failures {
            let _ = writeln!(out, "  {f}");
        }
        let _ = writeln!(out, "{}", if self.passed() { "PASS" } else { "FAIL" });
        out
    }
}

/// Builds and runs `trials` seeded harnesses for `block` (seeds
/// `seed..seed + trials`) and checks the block's basis-state contract on
/// every branch.
pub fn check_block(block: BlockKind, spec: &MachineSpec, trials: usize, seed: u64) -> Result<BlockTestReport, VerifyError> {
    let mut report = BlockTestReport {
        block,
        spec: *spec,
        trials,
        num_qubits: 0,
        test_qubits: 0,
        branches_checked: 0,
        out_of_domain: 0,
        distinct_inputs: 0,
        dense_checked: false,
        max_backend_difference: 0.0,
        failure_count: 0,
        failures: Vec::new(),
        pairs: Vec::new(),
    };
    let mut inputs = std::collections::BTreeSet::new();
    for trial in 0..trials {
        let test = build_block_test(block, spec, seed.wrapping_add(trial as u64))?;
        report.num_qubits = test.circuit.num_qubits();
        report.test_qubits = test.test_qubits();
        let outcome = simulate(&test.circuit, Backend::Sparse, 0)?;
        if test.circuit.num_qubits() <= DENSE_CHECK_LIMIT {
            let dense = simulate(&test.circuit, Backend::Dense, 0)?;
            report.dense_checked = true;
            report.max_backend_difference = report.max_backend_difference.max(outcome.max_difference(&dense));
        }
        check_outcome(&test, &outcome, &mut report, &mut inputs);
    }
    report.distinct_inputs = inputs.len();
    Ok(report)
}

fn check_outcome(
    test: &BlockTest,
    outcome: &SimOutcome,
    report: &mut BlockTestReport,
    inputs: &mut std::collections::BTreeSet<(u128, u128)>,
) {
    let spec = &test.spec;
    let c = spec.cells() as u128;
    let q_sym = spec.symbol_bits();
    let fields = EntryLayout::of(spec);

    if test.block == BlockKind::Init {
        let p = spec.program_count();
        let expected = 1.0 / (p as f64).sqrt();
        report.branches_checked += outcome.branches.len();
        if outcome.branches.len() as u128 != p {
            fail(report, format!("expected {p} branches, found {}", outcome.branches.len()));
        }
        for &(index, amp) in &outcome.branches {
            inputs.insert((register_value(index, test.role("FSM")), 0));
            if (amp - expected).abs() > 1e-9 {
                fail(report, format!("branch {index} amplitude {amp}"));
            }
        }
        return;
    }

    for &(index, _) in &outcome.branches {
        let v = |name: &str| register_value(index, test.role(name));
        let old = v("TEST");
        let head = v("HEAD");
        let (new, expected, domain_input): (u128, Option<u128>, u128) = match test.block {
            BlockKind::Read => {
                let new = v("READ");
                let sym = if head < c { cell(v("TAPE"), head, q_sym) } else { 0 };
                (new, Some(old ^ sym), v("TAPE") << 8 | head)
            }
            BlockKind::Delta | BlockKind::Reset => {
                let (state, read, fsm) = (v("STATE"), v("READ"), v("FSM"));
                let valid = (state as usize) < spec.states() && (read as usize) < spec.symbols();
                let entry = if valid {
                    let off = fields.entry_offset(spec, state as usize, read as usize);
                    Some((fsm >> off) & ((1u128 << fields.width) - 1))
                } else {
                    None
                };
                let field = |e: u128, at: usize, width: usize| (e >> at) & ((1u128 << width) - 1);
                if test.block == BlockKind::Delta {
                    let new = v("WRITE") | v("MOVE") << q_sym | v("NEXT") << (q_sym + spec.move_bits());
                    let expected = entry.map(|e| {
                        let has_next = !test.role("NEXT").is_empty();
                        let next = if has_next { field(e, fields.next_state, spec.state_bits()) } else { 0 };
                        old ^ (field(e, fields.write, q_sym)
                            | field(e, fields.movement, spec.move_bits()) << q_sym
                            | next << (q_sym + spec.move_bits()))
                    });
                    (new, expected, fsm << 16 | read << 8 | state)
                } else {
                    let scratch = v("WRITE") | v("MOVE");
                    if scratch != 0 {
                        fail(report, format!("branch {index}: WRITE/MOVE not cleared"));
                    }
                    let has_next = !test.role("NEXT").is_empty();
                    if has_next && v("NEXT") != old {
                        fail(report, format!("branch {index}: history slot {} != old state {old}", v("NEXT")));
                    }
                    let new = state;
                    // The state register was swapped, so the pre-block state is `old`.
                    let expected = if has_next {
                        let entry = if (old as usize) < spec.states() && (read as usize) < spec.symbols() {
                            let off = fields.entry_offset(spec, old as usize, read as usize);
                            Some((fsm >> off) & ((1u128 << fields.width) - 1))
                        } else {
                            None
                        };
                        entry.map(|e| field(e, fields.next_state, spec.state_bits()))
                    } else {
                        Some(old)
                    };
                    (new, expected, fsm << 16 | read << 8 | old)
                }
            }
            BlockKind::Write => {
                let new = v("TAPE");
                let expected = if head < c {
                    let mask = ((1u128 << q_sym) - 1) << (head as usize * q_sym);
                    Some((old & !mask) | v("WRITE") << (head as usize * q_sym))
                } else {
                    Some(old)
                };
                (new, expected, v("WRITE") << 120 | old << 8 | head)
            }
            BlockKind::Move => {
                if old < c && v("ANCILLA") != 0 {
                    fail(report, format!("branch {index}: ancilla not restored"));
                }
                let dir = v("MOVE");
                let expected = (old < c).then(|| if dir == 1 { (old + 1) % c } else { (old + c - 1) % c });
                (head, expected, dir << 64 | old)
            }
            BlockKind::Init => unreachable!(),
        };
        let Some(expected) = expected else {
            report.out_of_domain += 1;
            continue;
        };
        report.branches_checked += 1;
        inputs.insert((domain_input, old));
        if report.pairs.len() < MAX_PAIRS {
            report.pairs.push(BlockObservation { old, new });
        }
        if new != expected {
            fail(report, format!("branch {index}: old {old} new {new} expected {expected}"));
        }
    }
}

fn cell(tape: u128, i: u128, width: usize) -> u128 {
    (tape >> (i as usize * width)) & ((1u128 << width) - 1)
}

fn fail(report: &mut BlockTestReport, message: String) {
    report.failure_count += 1;
    if report.failures.len() < MAX_REPORTED {
        report.failures.push(message);
    }
}
