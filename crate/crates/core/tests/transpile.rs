mod common;

use common::eval_permutation;
use qpulba::builder::{build_machine, LayoutMode};
use qpulba::circuit::{Circuit, Control, Gate};
use qpulba::machine::MachineSpec;
use qpulba::transpile::{census, is_native, resolve_negative_controls, transpile, LoweringStrategy};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// The machine after its Hadamard layer, which is the only non-permutation part.
fn permutation_part(circuit: &Circuit, skip: usize) -> Circuit {
    let mut c = Circuit::like(circuit);
    for g in &circuit.gates()[skip..] {
        c.append(g.clone()).unwrap();
    }
    c
}

#[test]
fn lowering_preserves_the_machine_on_random_basis_states() {
    let spec = MachineSpec::relaxed(2, 2, 12, 1).unwrap();
    let (layout, circuit) = build_machine(&spec, LayoutMode::PaperCompat).unwrap();
    let body = permutation_part(&circuit, layout.fsm().len());
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for strategy in [LoweringStrategy::Borrowed, LoweringStrategy::Clean] {
        let lowered = transpile(&body, strategy).unwrap();
        assert!(is_native(&lowered));
        for _ in 0..100 {
            let input: u128 = rng.gen::<u128>() & ((1 << body.num_qubits()) - 1);
            assert_eq!(eval_permutation(&lowered, input), eval_permutation(&body, input), "{strategy:?}");
        }
    }
}

#[test]
fn negative_resolution_is_exact() {
    let mut c = Circuit::new(5);
    c.append(Gate::mcx(vec![Control::negative(0), Control::positive(1), Control::negative(2)], 3)).unwrap();
    c.append(Gate::x(2)).unwrap();
    c.append(Gate::mcx(vec![Control::negative(2), Control::negative(3)], 4)).unwrap();
    c.append(Gate::swap(0, 4)).unwrap();
    let resolved = resolve_negative_controls(&c);
    assert!(!resolved.gates().iter().any(Gate::has_negative_control));
    for input in 0..32 {
        assert_eq!(eval_permutation(&resolved, input), eval_permutation(&c, input));
    }
}

#[test]
fn census_keeps_the_structural_counts() {
    let report = census(LoweringStrategy::Borrowed).unwrap();
    assert_eq!(report.counts.h, 12);
    assert_eq!(report.counts.swap, 1);
    assert_eq!(report.counts.ry, 0);
    assert_eq!(report.counts.mcx, 0);
    let rows = report.rows();
    assert_eq!(rows.last().unwrap().0, "TOTAL");
    assert_eq!(rows.last().unwrap().2, 627);
    assert!(report.render().contains("TOFFOLI"));
}

#[test]
fn clean_lowering_adds_one_register() {
    let spec = MachineSpec::program_sized(2, 2).unwrap();
    let (layout, circuit) = build_machine(&spec, LayoutMode::General).unwrap();
    let lowered = transpile(&circuit, LoweringStrategy::Clean).unwrap();
    let extra = lowered.register("LOWERING").unwrap();
    assert_eq!(lowered.num_qubits(), layout.num_qubits() + extra.width());
    assert_eq!(extra.width(), 3);
}
