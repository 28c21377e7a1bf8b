mod common;

use common::{eval_permutation, read_register, with_register};
use qpulba::builder::{
    build_delta, build_init, build_machine, build_move, build_read, build_reset, build_write, plan_layout, LayoutMode,
    QubitLayout,
};
use qpulba::machine::{encode_program, MachineSpec, Move, TransitionEntry, TransitionTable};
use qpulba::sim::{simulate, Backend};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn general(m: usize, n: usize) -> QubitLayout {
    plan_layout(&MachineSpec::program_sized(m, n).unwrap(), LayoutMode::General).unwrap()
}

fn random_tape(rng: &mut ChaCha8Rng, layout: &QubitLayout) -> u128 {
    let bits = layout.tape().len();
    rng.gen::<u128>() & ((1u128 << bits) - 1)
}

#[test]
fn read_copies_the_cell_under_the_head() {
    let l = general(2, 2);
    let read = build_read(&l, 0).unwrap();
    assert_eq!(read.len(), 12);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for head in 0..12u128 {
        for _ in 0..16 {
            let tape = random_tape(&mut rng, &l);
            let input = with_register(with_register(0, l.head(), head), l.tape(), tape);
            let out = eval_permutation(&read, input);
            assert_eq!(read_register(out, l.read(0)), tape >> head & 1);
            assert_eq!(out & !(1 << l.read(0)[0].0), input);
        }
    }
}

#[test]
fn write_replaces_the_cell_under_the_head() {
    let l = general(2, 2);
    let mut block = build_read(&l, 0).unwrap();
    block.extend(&build_write(&l, 0).unwrap()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for head in 0..12u128 {
        for old in 0..2u128 {
            for write in 0..2u128 {
                let tape = (random_tape(&mut rng, &l) & !(1 << head)) | old << head;
                let input = with_register(with_register(with_register(0, l.head(), head), l.tape(), tape), l.write(), write);
                let out = eval_permutation(&block, input);
                let expected = (tape & !(1 << head)) | write << head;
                assert_eq!(read_register(out, l.tape()), expected, "head {head} old {old} write {write}");
                assert_eq!(read_register(out, l.read(0)), old);
            }
        }
    }
}

#[test]
fn delta_loads_the_selected_entry() {
    let spec = MachineSpec::program_sized(2, 2).unwrap();
    let l = plan_layout(&spec, LayoutMode::General).unwrap();
    let table = TransitionTable::from_entries(
        vec![
            TransitionEntry::new(1, Move::Left, 1),
            TransitionEntry::new(1, Move::Right, 0),
            TransitionEntry::new(1, Move::Left, 0),
            TransitionEntry::new(0, Move::Right, 1),
        ],
        &spec,
    )
    .unwrap();
    let program = encode_program(&table, &spec).unwrap();
    let delta = build_delta(&l, 0, true).unwrap();
    assert_eq!(delta.len(), 12);
    assert!(delta.gates().iter().all(|g| g.controls().len() == 3));
    for state in 0..2u128 {
        for read in 0..2u128 {
            let input = with_register(with_register(with_register(0, l.fsm(), program), l.state(), state), l.read(0), read);
            let out = eval_permutation(&delta, input);
            let entry = table.entry(state as usize, read as usize);
            assert_eq!(read_register(out, l.write()), entry.write as u128);
            assert_eq!(read_register(out, l.movement()), entry.movement.bit());
            assert_eq!(read_register(out, l.next_state(0).unwrap()), entry.next_state as u128);
        }
    }
}

#[test]
fn single_state_delta_has_no_state_gates() {
    let l = general(1, 2);
    assert_eq!(build_delta(&l, 0, true).unwrap().len(), 4);
    let init = build_init(&l).unwrap();
    let targets: Vec<usize> = init.gates().iter().map(|g| g.target().0).collect();
    assert_eq!(targets, vec![0, 1, 2, 3]);
}

#[test]
fn move_is_modular_for_every_tape_length() {
    for cells in 1..=20 {
        let spec = MachineSpec::relaxed(2, 2, cells, 1).unwrap();
        let l = plan_layout(&spec, LayoutMode::General).unwrap();
        let mv = build_move(&l).unwrap();
        for head in 0..cells as u128 {
            for dir in 0..2u128 {
                let input = with_register(with_register(0, l.head(), head), l.movement(), dir);
                let out = eval_permutation(&mv, input);
                let c = cells as u128;
                let expected = if dir == 1 { (head + 1) % c } else { (head + c - 1) % c };
                assert_eq!(read_register(out, l.head()), expected, "c={cells} head={head} dir={dir}");
                assert_eq!(read_register(out, l.ancilla()), 0);
                assert_eq!(read_register(out, l.movement()), dir);
            }
        }
    }
}

#[test]
fn reset_clears_scratch_and_rotates_state() {
    let spec = MachineSpec::program_sized(2, 2).unwrap();
    let l = plan_layout(&spec, LayoutMode::General).unwrap();
    let mut cycle = build_delta(&l, 0, true).unwrap();
    cycle.extend(&build_reset(&l, 0).unwrap()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..200 {
        let program = rng.gen_range(0..4096u128);
        let state = rng.gen_range(0..2u128);
        let read = rng.gen_range(0..2u128);
        let input = with_register(with_register(with_register(0, l.fsm(), program), l.state(), state), l.read(0), read);
        let out = eval_permutation(&cycle, input);
        let table = qpulba::decode_program(program, &spec).unwrap();
        assert_eq!(read_register(out, l.write()) | read_register(out, l.movement()), 0);
        assert_eq!(read_register(out, l.next_state(0).unwrap()), state);
        assert_eq!(
            read_register(out, l.state()),
            table.entry(state as usize, read as usize).next_state as u128
        );
    }
}

#[test]
fn single_state_binary_machine_superposes_sixteen_runs() {
    let spec = MachineSpec::program_sized(1, 2).unwrap();
    for mode in [LayoutMode::General, LayoutMode::PaperCompat] {
        let (layout, circuit) = build_machine(&spec, mode).unwrap();
        let out = simulate(&circuit, Backend::Sparse, 0).unwrap();
        assert_eq!(out.branches.len(), 16);
        assert!(out.branches.iter().all(|b| (b.1 - 0.25).abs() < 1e-12));
        let tape = out.marginal(layout.tape());
        assert_eq!(tape.probabilities.len(), 2);
        assert!((tape.get(0b0000) - 0.5).abs() < 1e-12);
        assert!((tape.get(0b1111) - 0.5).abs() < 1e-12);
        let fsm = out.marginal(layout.fsm());
        assert!(fsm.probabilities.values().all(|p| (p - 1.0 / 16.0).abs() < 1e-12));
    }
}

#[test]
fn layout_report_lists_registers() {
    let spec = MachineSpec::relaxed(2, 2, 12, 1).unwrap();
    let l = plan_layout(&spec, LayoutMode::PaperCompat).unwrap();
    let report = l.report();
    assert!(report.starts_with("Number of 2-state 2-symbol 1-dimension QPULBA: 4096\n"));
    assert!(report.contains("HEAD    : [15, 16, 17, 18]\n"));
    assert!(report.contains("ANCILLA : [33, 34, 35]\n"));
    let json = l.report_json();
    assert_eq!(json["counts"]["total"], 36);
    assert_eq!(json["registers"][6]["name"], "TAPE");
}
