use std::fmt;

use serde::{Deserialize, Serialize};

use super::CircuitError;

/// Position of a qubit in the flat, machine-wide numbering.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Qubit(pub usize);

impl Qubit {
    pub fn index(self) -> usize {
        self.0
    }
}

impl From<usize> for Qubit {
    fn from(index: usize) -> Self {
        Qubit(index)
    }
}

impl fmt::Display for Qubit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q{}", self.0)
    }
}

/// Which basis value of a control qubit enables the gate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Polarity {
    /// Fires when the control is |1⟩ (filled dot).
    Positive,
    /// Fires when the control is |0⟩ (open dot).
    Negative,
}

impl Polarity {
    pub fn from_bit(fire_on_one: bool) -> Self {
        if fire_on_one {
            Polarity::Positive
        } else {
            Polarity::Negative
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Control {
    pub qubit: Qubit,
    pub polarity: Polarity,
}

impl Control {
    pub fn positive(qubit: impl Into<Qubit>) -> Self {
        Control {
            qubit: qubit.into(),
            polarity: Polarity::Positive,
        }
    }

    pub fn negative(qubit: impl Into<Qubit>) -> Self {
        Control {
            qubit: qubit.into(),
            polarity: Polarity::Negative,
        }
    }

    /// Fires when `qubit` holds `bit`.
    pub fn on(qubit: impl Into<Qubit>, bit: bool) -> Self {
        Control {
            qubit: qubit.into(),
            polarity: Polarity::from_bit(bit),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum GateKind {
    H,
    X,
    /// Rotation about Y by the given angle in radians.
    Ry(f64),
    Cnot,
    Swap,
    Toffoli,
    Mcx,
}

impl GateKind {
    pub fn name(&self) -> &'static str {
        match self {
            GateKind::H => "H",
            GateKind::X => "X",
            GateKind::Ry(_) => "RY",
            GateKind::Cnot => "CNOT",
            GateKind::Swap => "SWAP",
            GateKind::Toffoli => "TOFFOLI",
            GateKind::Mcx => "MCX",
        }
    }

    /// True for gates that map computational basis states to basis states.
    pub fn is_permutation(&self) -> bool {
        !matches!(self, GateKind::H | GateKind::Ry(_))
    }
}

/// One gate of the IR.
///
/// Arity rules: H, X and RY take one target and no controls; CNOT one
/// control, TOFFOLI two, MCX one or more; SWAP two targets, no controls.
#[derive(Debug, Clone, PartialEq)]
pub struct Gate {
    kind: GateKind,
    targets: Vec<Qubit>,
    controls: Vec<Control>,
}

impl Gate {
    /// Builds a gate, checking arity and overlap but not the qubit range.
    pub fn new(kind: GateKind, targets: Vec<Qubit>, controls: Vec<Control>) -> Result<Self, CircuitError> {
        let gate = Gate {
            kind,
            targets,
            controls,
        };
        gate.check_shape()?;
        Ok(gate)
    }

    pub fn h(q: impl Into<Qubit>) -> Self {
        Gate {
            kind: GateKind::H,
            targets: vec![q.into()],
            controls: vec![],
        }
    }

    pub fn x(q: impl Into<Qubit>) -> Self {
        Gate {
            kind: GateKind::X,
            targets: vec![q.into()],
            controls: vec![],
        }
    }

    pub fn ry(q: impl Into<Qubit>, angle: f64) -> Self {
        Gate {
            kind: GateKind::Ry(angle),
            targets: vec![q.into()],
            controls: vec![],
        }
    }

    pub fn cnot(control: impl Into<Qubit>, target: impl Into<Qubit>) -> Self {
        Gate {
            kind: GateKind::Cnot,
            targets: vec![target.into()],
            controls: vec![Control::positive(control)],
        }
    }

    pub fn toffoli(c0: impl Into<Qubit>, c1: impl Into<Qubit>, target: impl Into<Qubit>) -> Self {
        Gate {
            kind: GateKind::Toffoli,
            targets: vec![target.into()],
            controls: vec![Control::positive(c0), Control::positive(c1)],
        }
    }

    pub fn swap(a: impl Into<Qubit>, b: impl Into<Qubit>) -> Self {
        Gate {
            kind: GateKind::Swap,
            targets: vec![a.into(), b.into()],
            controls: vec![],
        }
    }

    pub fn mcx(controls: Vec<Control>, target: impl Into<Qubit>) -> Self {
        Gate {
            kind: GateKind::Mcx,
            targets: vec![target.into()],
            controls,
        }
    }

    pub fn kind(&self) -> GateKind {
        self.kind
    }

    pub fn targets(&self) -> &[Qubit] {
        &self.targets
    }

    pub fn target(&self) -> Qubit {
        self.targets[0]
    }

    pub fn controls(&self) -> &[Control] {
        &self.controls
    }

    pub fn has_negative_control(&self) -> bool {
        self.controls.iter().any(|c| c.polarity == Polarity::Negative)
    }

    /// Every qubit the gate touches, targets first.
    pub fn qubits(&self) -> impl Iterator<Item = Qubit> + '_ {
        self.targets.iter().copied().chain(self.controls.iter().map(|c| c.qubit))
    }

    /// The inverse gate. Everything in the set is self-inverse except RY.
    pub fn inverse(&self) -> Gate {
        let mut g = self.clone();
        if let GateKind::Ry(theta) = g.kind {
            g.kind = GateKind::Ry(-theta);
        }
        g
    }

    pub(crate) fn check_shape(&self) -> Result<(), CircuitError> {
        let (targets, controls_ok) = match self.kind {
            GateKind::H | GateKind::X | GateKind::Ry(_) => (1, self.controls.is_empty()),
            GateKind::Cnot => (1, self.controls.len() == 1),
            GateKind::Toffoli => (1, self.controls.len() == 2),
            GateKind::Mcx => (1, !self.controls.is_empty()),
            GateKind::Swap => (2, self.controls.is_empty()),
        };
        if self.targets.len() != targets || !controls_ok {
            return Err(CircuitError::Arity {
                kind: self.kind.name(),
                targets: self.targets.len(),
                controls: self.controls.len(),
            });
        }
        if let GateKind::Ry(theta) = self.kind {
            if !theta.is_finite() {
                return Err(CircuitError::NonFiniteAngle);
            }
        }
        let mut seen: Vec<Qubit> = self.qubits().collect();
        seen.sort_unstable();
        if let Some(w) = seen.windows(2).find(|w| w[0] == w[1]) {
            return Err(CircuitError::Overlap(w[0].0));
        }
        Ok(())
    }

    pub(crate) fn check(&self, num_qubits: usize) -> Result<(), CircuitError> {
        self.check_shape()?;
        if let Some(q) = self.qubits().find(|q| q.0 >= num_qubits) {
            return Err(CircuitError::QubitOutOfRange {
                qubit: q.0,
                num_qubits,
            });
        }
        Ok(())
    }

    /// Copy of the gate with every qubit passed through `map`.
    pub fn remap(&self, map: impl Fn(Qubit) -> Qubit) -> Gate {
        Gate {
            kind: self.kind,
            targets: self.targets.iter().map(|&q| map(q)).collect(),
            controls: self
                .controls
                .iter()
                .map(|c| Control {
                    qubit: map(c.qubit),
                    polarity: c.polarity,
                })
                .collect(),
        }
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            GateKind::Ry(theta) => write!(f, "RY({theta})")?,
            k => write!(f, "{}", k.name())?,
        }
        for c in &self.controls {
            let mark = match c.polarity {
                Polarity::Positive => '+',
                Polarity::Negative => '-',
            };
            write!(f, " {}{}", c.qubit, mark)?;
        }
        for t in &self.targets {
            write!(f, " ->{t}")?;
        }
        Ok(())
    }
}
