mod common;

use common::tables::{Row, BINARY_SINGLE_STATE, UNARY_SINGLE, UNARY_TWO_STATE};
use qpulba::machine::{
    decode_program, enumerate, records_to_csv, sample, tape_histogram, MachineError, MachineSpec, DEFAULT_GUARD,
};

fn check_rows(spec: &MachineSpec, rows: &[Row]) {
    let records = enumerate(spec, DEFAULT_GUARD).unwrap();
    assert_eq!(records.len(), rows.len());
    for (rec, row) in records.iter().zip(rows) {
        assert_eq!(rec.program, row.program);
        assert_eq!(rec.final_tape, row.tape, "program {}", row.program);
        let table = decode_program(row.program, spec).unwrap();
        let mut rendered: Vec<String> = table.entries().iter().map(ToString::to_string).collect();
        rendered.reverse();
        assert_eq!(rendered, row.entries, "program {}", row.program);
    }
}

#[test]
fn unary_single_state_table() {
    check_rows(&MachineSpec::program_sized(1, 1).unwrap(), UNARY_SINGLE);
}

#[test]
fn unary_two_state_table() {
    check_rows(&MachineSpec::program_sized(2, 1).unwrap(), UNARY_TWO_STATE);
}

#[test]
fn binary_single_state_table() {
    check_rows(&MachineSpec::program_sized(1, 2).unwrap(), BINARY_SINGLE_STATE);
}

#[test]
fn binary_single_state_alternates_with_low_write_bit() {
    let spec = MachineSpec::program_sized(1, 2).unwrap();
    for rec in enumerate(&spec, DEFAULT_GUARD).unwrap() {
        let expected = if rec.program & 1 == 1 { "1111" } else { "0000" };
        assert_eq!(rec.final_tape, expected);
    }
}

#[test]
fn two_state_binary_sweep_is_thread_count_independent() {
    let spec = MachineSpec::program_sized(2, 2).unwrap();
    let run = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        pool.install(|| records_to_csv(&enumerate(&spec, DEFAULT_GUARD).unwrap()).unwrap())
    };
    let one = run(1);
    assert_eq!(one, run(4));
    assert_eq!(one.lines().count(), 4097);
    let hist = tape_histogram(&enumerate(&spec, DEFAULT_GUARD).unwrap());
    assert_eq!(hist.values().sum::<usize>(), 4096);
}

#[test]
fn dna_alphabet_is_guarded_and_sampled() {
    let spec = MachineSpec::program_sized(2, 4).unwrap();
    assert!(matches!(
        enumerate(&spec, DEFAULT_GUARD),
        Err(MachineError::GuardExceeded { .. })
    ));
    let rows = sample(&spec, 64, 2024).unwrap();
    assert_eq!(rows.len(), 64);
    assert_eq!(rows, sample(&spec, 64, 2024).unwrap());
}
