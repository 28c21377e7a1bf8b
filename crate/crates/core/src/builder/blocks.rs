use super::arith::modular_increment;
use super::{BuildError, QubitLayout};
use crate::circuit::{Circuit, Control, Gate, Qubit};
use crate::machine::EntryLayout;

/// Controls that fire when `register` holds `value` (bit 0 = first qubit).
pub(crate) fn pattern(register: &[Qubit], value: usize) -> impl Iterator<Item = Control> + '_ {
    register.iter().enumerate().map(move |(b, &q)| Control::on(q, value >> b & 1 == 1))
}

fn check_cycle(layout: &QubitLayout, cycle: usize) -> Result<(), BuildError> {
    let cycles = layout.spec().cycles();
    if cycle >= cycles {
        return Err(BuildError::CycleOutOfRange { cycle, cycles });
    }
    Ok(())
}

fn mcx(c: &mut Circuit, controls: impl IntoIterator<Item = Control>, target: Qubit) -> Result<(), BuildError> {
    c.append(Gate::mcx(controls.into_iter().collect(), target))?;
    Ok(())
}

/// Hadamard on every FSM qubit.
pub fn build_init(layout: &QubitLayout) -> Result<Circuit, BuildError> {
    let mut c = layout.empty_circuit();
    for &q in layout.fsm() {
        c.append(Gate::h(q))?;
    }
    Ok(c)
}

/// Copies the symbol under the head into the READ register of `cycle`.
pub fn build_read(layout: &QubitLayout, cycle: usize) -> Result<Circuit, BuildError> {
    check_cycle(layout, cycle)?;
    let mut c = layout.empty_circuit();
    let read = layout.read(cycle);
    for cell in 0..layout.spec().cells() {
        for (b, &bit) in layout.tape_cell(cell).iter().enumerate() {
            let controls = pattern(layout.head(), cell).chain([Control::positive(bit)]);
            mcx(&mut c, controls, read[b])?;
        }
    }
    Ok(c)
}

/// Loads the table entry selected by the current state and the symbol read
/// in `cycle` into WRITE, MOVE and, with `next_state`, the next STATE
/// register. Fields go in write, move, state order within each entry.
pub fn build_delta(layout: &QubitLayout, cycle: usize, next_state: bool) -> Result<Circuit, BuildError> {
    check_cycle(layout, cycle)?;
    let spec = layout.spec();
    let next = if next_state {
        Some(layout.next_state(cycle).ok_or(BuildError::NoNextState(cycle))?)
    } else {
        None
    };
    let fields = EntryLayout::of(spec);
    let fsm = layout.fsm();
    let mut c = layout.empty_circuit();
    for state in 0..spec.states() {
        for symbol in 0..spec.symbols() {
            let base: Vec<Control> = pattern(layout.state(), state)
                .chain(pattern(layout.read(cycle), symbol))
                .collect();
            let offset = fields.entry_offset(spec, state, symbol);
            let mut load = |field: usize, targets: &[Qubit]| -> Result<(), BuildError> {
                for (b, &target) in targets.iter().enumerate() {
                    let source = Control::positive(fsm[offset + field + b]);
                    mcx(&mut c, base.iter().copied().chain([source]), target)?;
                }
                Ok(())
            };
            load(fields.write, layout.write())?;
            load(fields.movement, layout.movement())?;
            if let Some(next) = next {
                load(fields.next_state, next)?;
            }
        }
    }
    Ok(c)
}

/// Overwrites the cell under the head with WRITE: the read bits are XORed
/// out first, then the written bits XORed in.
pub fn build_write(layout: &QubitLayout, cycle: usize) -> Result<Circuit, BuildError> {
    check_cycle(layout, cycle)?;
    let mut c = layout.empty_circuit();
    for source in [layout.read(cycle), layout.write()] {
        for cell in 0..layout.spec().cells() {
            for (b, &bit) in layout.tape_cell(cell).iter().enumerate() {
                let controls = pattern(layout.head(), cell).chain([Control::positive(source[b])]);
                mcx(&mut c, controls, bit)?;
            }
        }
    }
    Ok(c)
}

/// Moves the head one cell right when MOVE is 1 and one cell left when it
/// is 0, modulo the tape length.
pub fn build_move(layout: &QubitLayout) -> Result<Circuit, BuildError> {
    let spec = layout.spec();
    let mut c = layout.empty_circuit();
    let Some(&dir) = layout.movement().first() else {
        return Ok(c);
    };
    let mut inc = layout.empty_circuit();
    modular_increment(&mut inc, dir, layout.head(), layout.carries(), layout.wrap(), spec.cells())?;
    c.extend(&inc)?;
    c.append(Gate::x(dir))?;
    c.extend(&inc.inverse())?;
    c.append(Gate::x(dir))?;
    Ok(c)
}

/// Clears WRITE and MOVE by replaying their loads, then swaps the fresh
/// next state into the canonical STATE register when one was computed.
pub fn build_reset(layout: &QubitLayout, cycle: usize) -> Result<Circuit, BuildError> {
    let mut c = build_delta(layout, cycle, false)?;
    if let Some(next) = layout.next_state(cycle) {
        for (&a, &b) in layout.state().iter().zip(next) {
            c.append(Gate::swap(a, b))?;
        }
    }
    Ok(c)
}

/// Read, delta, write, move and reset for one cycle.
pub fn build_cycle(layout: &QubitLayout, cycle: usize) -> Result<Circuit, BuildError> {
    let computes_next = layout.next_state(cycle).is_some();
    let mut c = build_read(layout, cycle)?;
    c.extend(&build_delta(layout, cycle, computes_next)?)?;
    c.extend(&build_write(layout, cycle)?)?;
    c.extend(&build_move(layout)?)?;
    c.extend(&build_reset(layout, cycle)?)?;
    Ok(c)
}

/// Initialisation followed by every cycle.
pub fn build_machine_on(layout: &QubitLayout) -> Result<Circuit, BuildError> {
    let mut c = build_init(layout)?;
    for cycle in 0..layout.spec().cycles() {
        c.extend(&build_cycle(layout, cycle)?)?;
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builder::{plan_layout, LayoutMode};
    use crate::circuit::GateKind;
    use crate::machine::MachineSpec;

    fn compat_single() -> QubitLayout {
        let spec = MachineSpec::relaxed(2, 2, 12, 1).unwrap();
        plan_layout(&spec, LayoutMode::PaperCompat).unwrap()
    }

    #[test]
    fn read_gate_count_and_shape() {
        let l = compat_single();
        let c = build_read(&l, 0).unwrap();
        assert_eq!(c.len(), 12);
        let g = &c.gates()[5];
        assert_eq!(g.target(), Qubit(19));
        assert_eq!(g.controls().len(), 5);
        assert_eq!(*g.controls().last().unwrap(), Control::positive(26));
    }

    #[test]
    fn delta_entry_order_is_write_move_state() {
        let l = compat_single();
        let c = build_delta(&l, 0, true).unwrap();
        assert_eq!(c.len(), 12);
        let targets: Vec<usize> = c.gates()[..3].iter().map(|g| g.target().0).collect();
        assert_eq!(targets, vec![20, 14, 13]);
        let sources: Vec<usize> = c.gates().iter().map(|g| g.controls().last().unwrap().qubit.0).collect();
        assert_eq!(sources, (0..12).collect::<Vec<_>>());
    }

    #[test]
    fn reset_has_no_state_loads() {
        let l = compat_single();
        let c = build_reset(&l, 0).unwrap();
        assert_eq!(c.stats().mcx, 8);
        assert_eq!(c.gates().last().unwrap().kind(), GateKind::Swap);
    }

    #[test]
    fn final_general_cycle_skips_next_state() {
        let spec = MachineSpec::new(2, 2, 3, 2).unwrap();
        let l = plan_layout(&spec, LayoutMode::General).unwrap();
        assert!(build_delta(&l, 1, true).is_err());
        let c = build_cycle(&l, 1).unwrap();
        assert_eq!(c.stats().swap, 0);
        assert_eq!(build_cycle(&l, 0).unwrap().stats().swap, 1);
    }

    #[test]
    fn cycle_index_checked() {
        let l = compat_single();
        assert!(matches!(build_read(&l, 1), Err(BuildError::CycleOutOfRange { .. })));
    }
}
