use std::fmt;

use serde::{Deserialize, Serialize};

use super::{MachineError, MachineSpec};

/// Head movement. Encoded as a single bit: 0 is a left shift, 1 a right shift.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Move {
    Left,
    Right,
}

impl Move {
    pub fn bit(self) -> u128 {
        match self {
            Move::Left => 0,
            Move::Right => 1,
        }
    }

    pub fn from_bit(bit: bool) -> Self {
        if bit {
            Move::Right
        } else {
            Move::Left
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TransitionEntry {
    pub next_state: usize,
    pub movement: Move,
    pub write: usize,
}

impl TransitionEntry {
    pub const fn new(next_state: usize, movement: Move, write: usize) -> Self {
        TransitionEntry {
            next_state,
            movement,
            write,
        }
    }
}

impl fmt::Display for TransitionEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = match self.movement {
            Move::Left => 'l',
            Move::Right => 'r',
        };
        write!(f, "Q{} M{} W{}", self.next_state, m, self.write)
    }
}

/// A complete transition function `δ: Q × Γ → Q × Γ × {0,1}`.
///
/// Entries are stored row-major by `(state, read)`, which is also the order
/// in which they appear in the description number, least-significant first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TransitionTable {
    symbols: usize,
    entries: Vec<TransitionEntry>,
}

impl TransitionTable {
    /// Builds a table from `m·n` entries, checking every field against `spec`.
    pub fn from_entries(entries: Vec<TransitionEntry>, spec: &MachineSpec) -> Result<Self, MachineError> {
        if entries.len() != spec.states() * spec.symbols() {
            return Err(MachineError::Range(format!(
                "expected {} entries, got {}",
                spec.states() * spec.symbols(),
                entries.len()
            )));
        }
        for (slot, entry) in entries.iter().enumerate() {
            if entry.next_state >= spec.states() || entry.write >= spec.symbols() {
                return Err(MachineError::InvalidEntry {
                    state: slot / spec.symbols(),
                    read: slot % spec.symbols(),
                });
            }
        }
        Ok(TransitionTable {
            symbols: spec.symbols(),
            entries,
        })
    }

    pub fn entry(&self, state: usize, read: usize) -> &TransitionEntry {
        &self.entries[state * self.symbols + read]
    }

    pub fn entries(&self) -> &[TransitionEntry] {
        &self.entries
    }
}

/// Bit offsets of the fields inside one table entry, counted from the
/// least-significant bit: write symbol, then movement, then next state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EntryLayout {
    pub write: usize,
    pub movement: usize,
    pub next_state: usize,
    pub width: usize,
}

impl EntryLayout {
    pub fn of(spec: &MachineSpec) -> Self {
        let write = 0;
        let movement = spec.symbol_bits();
        let next_state = movement + spec.move_bits();
        EntryLayout {
            write,
            movement,
            next_state,
            width: next_state + spec.state_bits(),
        }
    }

    /// Offset of the first bit of entry `(state, read)` in the description number.
    pub fn entry_offset(&self, spec: &MachineSpec, state: usize, read: usize) -> usize {
        (state * spec.symbols() + read) * self.width
    }
}

fn mask(bits: usize) -> u128 {
    if bits == 0 {
        0
    } else {
        (1u128 << bits) - 1
    }
}

/// Decodes a description number into its transition table.
pub fn decode_program(number: u128, spec: &MachineSpec) -> Result<TransitionTable, MachineError> {
    let count = spec.program_count();
    if number >= count {
        return Err(MachineError::ProgramOutOfRange { program: number, count });
    }
    let layout = EntryLayout::of(spec);
    let mut entries = Vec::with_capacity(spec.states() * spec.symbols());
    for state in 0..spec.states() {
        for read in 0..spec.symbols() {
            let bits = number >> layout.entry_offset(spec, state, read);
            let write = ((bits >> layout.write) & mask(spec.symbol_bits())) as usize;
            let movement = Move::from_bit((bits >> layout.movement) & 1 == 1);
            let next_state = ((bits >> layout.next_state) & mask(spec.state_bits())) as usize;
            if next_state >= spec.states() || write >= spec.symbols() {
                return Err(MachineError::InvalidEntry { state, read });
            }
            entries.push(TransitionEntry {
                next_state,
                movement,
                write,
            });
        }
    }
    Ok(TransitionTable {
        symbols: spec.symbols(),
        entries,
    })
}

/// Inverse of [`decode_program`].
pub fn encode_program(table: &TransitionTable, spec: &MachineSpec) -> Result<u128, MachineError> {
    let table = TransitionTable::from_entries(table.entries.clone(), spec)?;
    let layout = EntryLayout::of(spec);
    let mut number = 0u128;
    for state in 0..spec.states() {
        for read in 0..spec.symbols() {
            let e = table.entry(state, read);
            let bits = ((e.write as u128) << layout.write)
                | (e.movement.bit() << layout.movement)
                | ((e.next_state as u128) << layout.next_state);
            number |= bits << layout.entry_offset(spec, state, read);
        }
    }
    Ok(number)
}
