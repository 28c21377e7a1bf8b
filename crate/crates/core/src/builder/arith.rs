use crate::circuit::{Circuit, CircuitError, Control, Gate, Qubit};

/// Adds 1 to `bits` (LSB first) when `control` is set.
///
/// Uses `bits.len() - 2` clean carries, which are returned to zero. The
/// carry out of the top bit is dropped, so the register wraps modulo
/// `2^bits.len()`.
pub fn controlled_increment(
    c: &mut Circuit,
    control: Qubit,
    bits: &[Qubit],
    carries: &[Qubit],
) -> Result<(), CircuitError> {
    let w = bits.len();
    if w == 0 {
        return Ok(());
    }
    if w == 1 {
        return c.append(Gate::cnot(control, bits[0]));
    }
    let need = w - 2;
    if carries.len() < need {
        return Err(CircuitError::Register(
            "ANCILLA".into(),
            format!("increment of {w} bits needs {need} carries, got {}", carries.len()),
        ));
    }
    // chain[i] is set when control and bits[..i] are all one.
    let chain = |i: usize| if i == 0 { control } else { carries[i - 1] };
    for i in 1..w - 1 {
        c.append(Gate::toffoli(chain(i - 1), bits[i - 1], chain(i)))?;
    }
    c.append(Gate::toffoli(chain(w - 2), bits[w - 2], bits[w - 1]))?;
    for i in (1..w - 1).rev() {
        c.append(Gate::cnot(chain(i), bits[i]))?;
        c.append(Gate::toffoli(chain(i - 1), bits[i - 1], chain(i)))?;
    }
    c.append(Gate::cnot(control, bits[0]))
}

fn equals(register: &[Qubit], value: usize) -> impl Iterator<Item = Control> + '_ {
    register.iter().enumerate().map(move |(b, &q)| Control::on(q, value >> b & 1 == 1))
}

/// Adds 1 modulo `modulus` to `head` when `control` is set, for head values
/// below `modulus`.
///
/// When `modulus` is not a power of two, a `wrap` flag detects the
/// `modulus - 1` case, the excess `2^w - modulus` is added back under that
/// flag, and the flag is cleared again by testing for the wrapped value 0.
pub fn modular_increment(
    c: &mut Circuit,
    control: Qubit,
    head: &[Qubit],
    carries: &[Qubit],
    wrap: Option<Qubit>,
    modulus: usize,
) -> Result<(), CircuitError> {
    let w = head.len();
    if modulus.is_power_of_two() && 1usize.checked_shl(w as u32) == Some(modulus) {
        return controlled_increment(c, control, head, carries);
    }
    let wrap = wrap.ok_or_else(|| {
        CircuitError::Register("ANCILLA".into(), format!("increment modulo {modulus} needs a wrap qubit"))
    })?;
    let detect = |value: usize| {
        let controls: Vec<Control> = std::iter::once(Control::positive(control)).chain(equals(head, value)).collect();
        Gate::mcx(controls, wrap)
    };
    c.append(detect(modulus - 1))?;
    controlled_increment(c, control, head, carries)?;
    let excess = (1usize << w) - modulus;
    for j in 0..w {
        if excess >> j & 1 == 1 {
            controlled_increment(c, wrap, &head[j..], carries)?;
        }
    }
    c.append(detect(0))
}

#[cfg(test)]
mod tests {
    use super::*;

    // Classical evaluation of a permutation circuit on one basis state.
    fn eval(c: &Circuit, mut state: u64) -> u64 {
        for g in c.gates() {
            let fire = g
                .controls()
                .iter()
                .all(|ctl| (state >> ctl.qubit.0 & 1 == 1) == (ctl.polarity == crate::circuit::Polarity::Positive));
            if !fire {
                continue;
            }
            match g.kind() {
                crate::circuit::GateKind::Swap => {
                    let (a, b) = (g.targets()[0].0, g.targets()[1].0);
                    if (state >> a & 1) != (state >> b & 1) {
                        state ^= (1 << a) | (1 << b);
                    }
                }
                _ => state ^= 1 << g.target().0,
            }
        }
        state
    }

    fn qs(range: std::ops::Range<usize>) -> Vec<Qubit> {
        range.map(Qubit).collect()
    }

    #[test]
    fn increment_wraps_power_of_two() {
        for w in 1..=5 {
            let head = qs(1..1 + w);
            let carries = qs(1 + w..1 + w + w.saturating_sub(2));
            let mut c = Circuit::new(1 + w + carries.len());
            controlled_increment(&mut c, Qubit(0), &head, &carries).unwrap();
            for v in 0..1u64 << w {
                assert_eq!(eval(&c, v << 1), v << 1, "control off, w={w} v={v}");
                let out = eval(&c, v << 1 | 1);
                assert_eq!(out, ((v + 1) % (1 << w)) << 1 | 1, "w={w} v={v}");
            }
        }
    }

    #[test]
    fn modular_increment_all_small_moduli() {
        for modulus in 2..=20usize {
            let w = crate::machine::bits_for(modulus);
            let head = qs(1..1 + w);
            let carries = qs(1 + w..1 + w + w.saturating_sub(2));
            let wrap = Qubit(1 + w + carries.len());
            let mut c = Circuit::new(wrap.0 + 1);
            modular_increment(&mut c, Qubit(0), &head, &carries, Some(wrap), modulus).unwrap();
            for v in 0..modulus as u64 {
                assert_eq!(eval(&c, v << 1 | 1), ((v + 1) % modulus as u64) << 1 | 1, "mod {modulus} v={v}");
                assert_eq!(eval(&c, v << 1), v << 1);
            }
        }
    }
}
