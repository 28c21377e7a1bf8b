use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{decode_program, render_tape, run_table, MachineError, MachineSpec};

/// Default refusal threshold for exhaustive sweeps.
pub const DEFAULT_GUARD: u128 = 1 << 20;

/// Outcome of one program after `t` cycles.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationRecord {
    pub program: u128,
    pub final_tape: String,
    pub final_state: usize,
    pub final_head: usize,
}

fn record(program: u128, spec: &MachineSpec) -> Option<EnumerationRecord> {
    let table = match decode_program(program, spec) {
        Ok(t) => t,
        Err(MachineError::InvalidEntry { .. }) => return None,
        Err(e) => unreachable!("program {program} in range but failed to decode: {e}"),
    };
    let config = run_table(&table, spec);
    Some(EnumerationRecord {
        program,
        final_tape: render_tape(&config),
        final_state: config.state,
        final_head: config.head,
    })
}

/// Runs every program in `[0, P)` and returns the records in program order.
///
/// Numbers that do not decode to a valid table (possible only when `m` or
/// `n` is not a power of two) are skipped. Programs are evaluated in
/// parallel on the current rayon pool; the output order does not depend on
/// the pool size.
pub fn enumerate(spec: &MachineSpec, guard: u128) -> Result<Vec<EnumerationRecord>, MachineError> {
    let programs = spec.program_count();
    if programs > guard {
        return Err(MachineError::GuardExceeded { programs, guard });
    }
    let total = u64::try_from(programs).map_err(|_| MachineError::GuardExceeded { programs, guard: u64::MAX as u128 })?;
    Ok((0..total)
        .into_par_iter()
        .filter_map(|p| record(p as u128, spec))
        .collect())
}

/// Runs `count` programs drawn uniformly (with replacement) from the valid
/// description numbers, in draw order. Deterministic for a given seed.
pub fn sample(spec: &MachineSpec, count: usize, seed: u64) -> Result<Vec<EnumerationRecord>, MachineError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let programs = spec.program_count();
    let mut drawn = Vec::with_capacity(count);
    while drawn.len() < count {
        let p = rng.gen_range(0..programs);
        if decode_program(p, spec).is_ok() {
            drawn.push(p);
        }
    }
    Ok(drawn.into_par_iter().filter_map(|p| record(p, spec)).collect())
}

/// Frequency of each rendered final tape.
pub fn tape_histogram(records: &[EnumerationRecord]) -> BTreeMap<String, usize> {
    let mut hist = BTreeMap::new();
    for r in records {
        *hist.entry(r.final_tape.clone()).or_insert(0) += 1;
    }
    hist
}

/// CSV with header `program,final_tape,final_state,final_head`.
pub fn records_to_csv(records: &[EnumerationRecord]) -> Result<String, MachineError> {
    let mut writer = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    writer.write_record(["program", "final_tape", "final_state", "final_head"])?;
    for r in records {
        writer.write_record([
            r.program.to_string(),
            r.final_tape.clone(),
            r.final_state.to_string(),
            r.final_head.to_string(),
        ])?;
    }
    let bytes = writer.into_inner().map_err(|e| MachineError::Csv(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

/// Parses the CSV written by [`records_to_csv`].
pub fn records_from_csv(text: &str) -> Result<Vec<EnumerationRecord>, MachineError> {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let mut out = Vec::new();
    for row in reader.records() {
        let row = row?;
        let field = |i: usize| row.get(i).ok_or_else(|| MachineError::Csv(format!("missing column {i}")));
        let parse_err = |e: std::num::ParseIntError| MachineError::Csv(e.to_string());
        out.push(EnumerationRecord {
            program: field(0)?.parse().map_err(parse_err)?,
            final_tape: field(1)?.to_string(),
            final_state: field(2)?.parse().map_err(parse_err)?,
            final_head: field(3)?.parse().map_err(parse_err)?,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unary_single_state_has_two_identical_rows() {
        let spec = MachineSpec::program_sized(1, 1).unwrap();
        let rows = enumerate(&spec, DEFAULT_GUARD).unwrap();
        assert_eq!(rows.len(), 2);
        assert!(rows.iter().all(|r| r.final_tape == "0"));
    }

    #[test]
    fn binary_single_state_splits_evenly() {
        let spec = MachineSpec::program_sized(1, 2).unwrap();
        let hist = tape_histogram(&enumerate(&spec, DEFAULT_GUARD).unwrap());
        assert_eq!(hist.len(), 2);
        assert_eq!(hist["0000"], 8);
        assert_eq!(hist["1111"], 8);
    }

    #[test]
    fn guard_refuses_large_sweeps() {
        let spec = MachineSpec::program_sized(2, 4).unwrap();
        match enumerate(&spec, DEFAULT_GUARD) {
            Err(MachineError::GuardExceeded { programs, guard }) => {
                assert_eq!(programs, 1 << 32);
                assert_eq!(guard, DEFAULT_GUARD);
            }
            other => panic!("expected guard error, got {other:?}"),
        }
    }

    #[test]
    fn sampling_is_seeded() {
        let spec = MachineSpec::program_sized(2, 4).unwrap();
        let a = sample(&spec, 8, 7).unwrap();
        let b = sample(&spec, 8, 7).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 8);
        assert!(a.iter().all(|r| r.final_tape.len() == 32));
        assert_ne!(a, sample(&spec, 8, 8).unwrap());
    }

    #[test]
    fn sparse_encodings_enumerate_valid_programs_only() {
        let spec = MachineSpec::new(3, 1, 2, 2).unwrap();
        let rows = enumerate(&spec, DEFAULT_GUARD).unwrap();
        assert_eq!(rows.len() as u128, spec.valid_program_count());
        assert!(rows.windows(2).all(|w| w[0].program < w[1].program));
    }

    #[test]
    fn csv_round_trip() {
        let spec = MachineSpec::program_sized(2, 1).unwrap();
        let rows = enumerate(&spec, DEFAULT_GUARD).unwrap();
        let text = records_to_csv(&rows).unwrap();
        assert!(text.starts_with("program,final_tape,final_state,final_head\n0,0000,"));
        assert_eq!(records_from_csv(&text).unwrap(), rows);
    }
}
