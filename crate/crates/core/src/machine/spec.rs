use std::fmt;

use serde::{Deserialize, Serialize};

use super::MachineError;

/// Largest description-number width we can address with `u128` arithmetic.
pub const MAX_PROGRAM_BITS: usize = 127;

/// Number of bits needed to hold `count` distinct values (`ceil(log2(count))`).
pub fn bits_for(count: usize) -> usize {
    if count <= 1 {
        0
    } else {
        (usize::BITS - (count - 1).leading_zeros()) as usize
    }
}

/// Parameters of a restricted, cycle-bounded, circular-tape automaton.
///
/// `m` states, `n` symbols, tape dimension `d` (always 1), `c` cells and
/// `t` cycles before the forced halt. Derived register widths follow from
/// these five values and are recomputed on demand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawSpec", into = "RawSpec")]
pub struct MachineSpec {
    states: usize,
    symbols: usize,
    dims: usize,
    cells: usize,
    cycles: usize,
}

#[derive(Serialize, Deserialize)]
struct RawSpec {
    m: usize,
    n: usize,
    d: usize,
    c: usize,
    t: usize,
}

impl TryFrom<RawSpec> for MachineSpec {
    type Error = MachineError;

    fn try_from(raw: RawSpec) -> Result<Self, Self::Error> {
        if raw.d != 1 {
            return Err(MachineError::Unsupported(format!(
                "tape dimension {} (only d = 1 is supported)",
                raw.d
            )));
        }
        MachineSpec::relaxed(raw.m, raw.n, raw.c, raw.t)
    }
}

impl From<MachineSpec> for RawSpec {
    fn from(spec: MachineSpec) -> Self {
        RawSpec {
            m: spec.states,
            n: spec.symbols,
            d: spec.dims,
            c: spec.cells,
            t: spec.cycles,
        }
    }
}

impl MachineSpec {
    /// Builds a spec and checks every invariant, including the causal-cone
    /// bound `c <= 2t + 1`.
    pub fn new(states: usize, symbols: usize, cells: usize, cycles: usize) -> Result<Self, MachineError> {
        let spec = Self::relaxed(states, symbols, cells, cycles)?;
        if cells > 2 * cycles + 1 {
            return Err(MachineError::TapeBound { cells, cycles });
        }
        Ok(spec)
    }

    /// Same as [`MachineSpec::new`] but allows tapes longer than the causal
    /// cone. Cells outside the cone are simply never visited.
    pub fn relaxed(states: usize, symbols: usize, cells: usize, cycles: usize) -> Result<Self, MachineError> {
        for (name, value) in [("m", states), ("n", symbols), ("c", cells), ("t", cycles)] {
            if value == 0 {
                return Err(MachineError::Unsupported(format!("{name} must be at least 1")));
            }
        }
        let spec = MachineSpec {
            states,
            symbols,
            dims: 1,
            cells,
            cycles,
        };
        let width = spec
            .states
            .checked_mul(spec.symbols)
            .and_then(|entries| entries.checked_mul(spec.entry_bits()));
        match width {
            Some(w) if w <= MAX_PROGRAM_BITS => Ok(spec),
            _ => Err(MachineError::Unsupported(format!(
                "description number wider than {MAX_PROGRAM_BITS} bits"
            ))),
        }
    }

    /// Spec with the tape length defaulting to the cycle count.
    pub fn with_default_tape(states: usize, symbols: usize, cycles: usize) -> Result<Self, MachineError> {
        Self::new(states, symbols, cycles, cycles)
    }

    /// The enumeration convention: `t` equals the program size and `c = t`.
    pub fn program_sized(states: usize, symbols: usize) -> Result<Self, MachineError> {
        let bits = Self::relaxed(states, symbols, 1, 1)?.delta_bits();
        Self::new(states, symbols, bits, bits)
    }

    pub fn states(&self) -> usize {
        self.states
    }

    pub fn symbols(&self) -> usize {
        self.symbols
    }

    pub fn dims(&self) -> usize {
        self.dims
    }

    pub fn cells(&self) -> usize {
        self.cells
    }

    pub fn cycles(&self) -> usize {
        self.cycles
    }

    /// `q_state`
    pub fn state_bits(&self) -> usize {
        bits_for(self.states)
    }

    /// `q_Γ`
    pub fn symbol_bits(&self) -> usize {
        bits_for(self.symbols)
    }

    /// `q_head`
    pub fn head_bits(&self) -> usize {
        bits_for(self.cells)
    }

    /// `q_move`
    pub fn move_bits(&self) -> usize {
        self.dims
    }

    /// Width of one transition-table entry: next state, move, write.
    pub fn entry_bits(&self) -> usize {
        self.state_bits() + self.move_bits() + self.symbol_bits()
    }

    /// `q_δ`
    pub fn delta_bits(&self) -> usize {
        self.states * self.symbols * self.entry_bits()
    }

    /// `P = 2^q_δ`
    pub fn program_count(&self) -> u128 {
        1u128 << self.delta_bits()
    }

    /// True when every description number decodes to an in-range table.
    pub fn dense_encoding(&self) -> bool {
        self.states.is_power_of_two() && self.symbols.is_power_of_two()
    }

    /// Number of description numbers that decode to a valid table.
    pub fn valid_program_count(&self) -> u128 {
        let per_entry =
            (self.states as u128) * (1u128 << self.move_bits()) * (self.symbols as u128);
        (0..self.states * self.symbols).fold(1u128, |acc, _| acc.saturating_mul(per_entry))
    }

    /// Short `m-n-d` case label.
    pub fn label(&self) -> String {
        format!("{}-{}-{}", self.states, self.symbols, self.dims)
    }
}

impl fmt::Display for MachineSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (c={}, t={})", self.label(), self.cells, self.cycles)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derived_widths_for_reference_cases() {
        let s = MachineSpec::program_sized(1, 1).unwrap();
        assert_eq!((s.delta_bits(), s.program_count(), s.cells(), s.cycles()), (1, 2, 1, 1));

        let s = MachineSpec::program_sized(2, 1).unwrap();
        assert_eq!((s.delta_bits(), s.program_count()), (4, 16));

        let s = MachineSpec::program_sized(1, 2).unwrap();
        assert_eq!((s.delta_bits(), s.program_count()), (4, 16));

        let s = MachineSpec::program_sized(2, 2).unwrap();
        assert_eq!((s.delta_bits(), s.program_count(), s.head_bits()), (12, 4096, 4));

        let s = MachineSpec::program_sized(2, 4).unwrap();
        assert_eq!((s.delta_bits(), s.program_count()), (32, 1u128 << 32));
    }

    #[test]
    fn bits_for_rounds_up() {
        assert_eq!(bits_for(1), 0);
        assert_eq!(bits_for(2), 1);
        assert_eq!(bits_for(3), 2);
        assert_eq!(bits_for(4), 2);
        assert_eq!(bits_for(12), 4);
        assert_eq!(bits_for(16), 4);
        assert_eq!(bits_for(17), 5);
    }

    #[test]
    fn rejects_zero_and_wide_tapes() {
        assert!(matches!(MachineSpec::new(0, 2, 4, 4), Err(MachineError::Unsupported(_))));
        assert!(matches!(MachineSpec::new(1, 2, 10, 4), Err(MachineError::TapeBound { .. })));
        assert!(MachineSpec::relaxed(2, 2, 12, 1).is_ok());
        assert!(MachineSpec::new(1, 2, 9, 4).is_ok());
    }

    #[test]
    fn valid_program_count_matches_dense_case() {
        let s = MachineSpec::program_sized(2, 2).unwrap();
        assert_eq!(s.valid_program_count(), s.program_count());
        let s = MachineSpec::new(3, 1, 2, 2).unwrap();
        // q_state = 2 but only 3 of 4 state codes are valid.
        assert_eq!(s.program_count(), 1 << 9);
        assert_eq!(s.valid_program_count(), 6u128.pow(3));
    }

    #[test]
    fn serde_rejects_other_dimensions() {
        let err = serde_json::from_str::<MachineSpec>(r#"{"m":1,"n":2,"d":2,"c":4,"t":4}"#);
        assert!(err.is_err());
        let ok: MachineSpec = serde_json::from_str(r#"{"m":1,"n":2,"d":1,"c":4,"t":4}"#).unwrap();
        assert_eq!(ok, MachineSpec::new(1, 2, 4, 4).unwrap());
    }
}
