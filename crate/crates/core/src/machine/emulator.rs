use serde::{Deserialize, Serialize};

use super::{decode_program, MachineError, MachineSpec, Move, TransitionTable};

/// Classical snapshot of the automaton between steps.
///
/// `written` only tracks which cells were ever written so the tape can be
/// rendered with the blank marker; it never influences the dynamics.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MachineConfig {
    pub tape: Vec<usize>,
    pub written: Vec<bool>,
    pub head: usize,
    pub state: usize,
    pub cycle: usize,
}

impl MachineConfig {
    /// All cells blank, head on cell 0, initial state, cycle 0.
    pub fn blank(spec: &MachineSpec) -> Self {
        MachineConfig {
            tape: vec![0; spec.cells()],
            written: vec![false; spec.cells()],
            head: 0,
            state: 0,
            cycle: 0,
        }
    }

    pub fn read(&self) -> usize {
        self.tape[self.head]
    }
}

/// Executes one step: read, write, move, then change state.
pub fn step(config: &MachineConfig, table: &TransitionTable, spec: &MachineSpec) -> MachineConfig {
    let entry = table.entry(config.state, config.read());
    let mut next = config.clone();
    next.tape[config.head] = entry.write;
    next.written[config.head] = true;
    let c = spec.cells();
    next.head = match entry.movement {
        Move::Right => (config.head + 1) % c,
        Move::Left => (config.head + c - 1) % c,
    };
    next.state = entry.next_state;
    next.cycle += 1;
    next
}

/// Every configuration visited while running a program, plus the symbol read
/// at each cycle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trace {
    pub configs: Vec<MachineConfig>,
    pub reads: Vec<usize>,
}

impl Trace {
    pub fn last(&self) -> &MachineConfig {
        self.configs.last().expect("trace always holds the initial config")
    }
}

/// Runs `program` for exactly `t` steps from the blank configuration.
pub fn run(program: u128, spec: &MachineSpec) -> Result<MachineConfig, MachineError> {
    let table = decode_program(program, spec)?;
    Ok(run_table(&table, spec))
}

pub fn run_table(table: &TransitionTable, spec: &MachineSpec) -> MachineConfig {
    let mut config = MachineConfig::blank(spec);
    for _ in 0..spec.cycles() {
        config = step(&config, table, spec);
    }
    config
}

/// Like [`run`] but keeps the full history.
pub fn trace(program: u128, spec: &MachineSpec) -> Result<Trace, MachineError> {
    let table = decode_program(program, spec)?;
    let mut configs = Vec::with_capacity(spec.cycles() + 1);
    let mut reads = Vec::with_capacity(spec.cycles());
    let mut config = MachineConfig::blank(spec);
    for _ in 0..spec.cycles() {
        reads.push(config.read());
        let next = step(&config, &table, spec);
        configs.push(config);
        config = next;
    }
    configs.push(config);
    Ok(Trace { configs, reads })
}

/// Renders the tape from cell 0, with `o` for never-written cells.
pub fn render_tape(config: &MachineConfig) -> String {
    config
        .tape
        .iter()
        .zip(&config.written)
        .map(|(&symbol, &written)| {
            if written {
                char::from_digit(symbol as u32, 36).unwrap_or('?')
            } else {
                'o'
            }
        })
        .collect()
}

/// Tape contents with blanks collapsed to symbol 0, as a quantum register sees them.
pub fn collapsed_tape(config: &MachineConfig) -> String {
    config
        .tape
        .iter()
        .map(|&s| char::from_digit(s as u32, 36).unwrap_or('?'))
        .collect()
}
