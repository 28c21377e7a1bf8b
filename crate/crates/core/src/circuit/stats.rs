use std::fmt;
use std::ops::Add;

use serde::{Deserialize, Serialize};

use super::{Gate, GateKind};

/// Per-kind gate counts.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GateStats {
    pub h: usize,
    pub x: usize,
    pub ry: usize,
    pub cnot: usize,
    pub swap: usize,
    pub toffoli: usize,
    pub mcx: usize,
    pub total: usize,
}

impl GateStats {
    pub fn of(gates: &[Gate]) -> Self {
        let mut s = GateStats::default();
        for g in gates {
            match g.kind() {
                GateKind::H => s.h += 1,
                GateKind::X => s.x += 1,
                GateKind::Ry(_) => s.ry += 1,
                GateKind::Cnot => s.cnot += 1,
                GateKind::Swap => s.swap += 1,
                GateKind::Toffoli => s.toffoli += 1,
                GateKind::Mcx => s.mcx += 1,
            }
        }
        s.total = gates.len();
        s
    }

    /// `(name, count)` pairs in a fixed order, total excluded.
    pub fn by_kind(&self) -> [(&'static str, usize); 7] {
        [
            ("H", self.h),
            ("X", self.x),
            ("RY", self.ry),
            ("CNOT", self.cnot),
            ("SWAP", self.swap),
            ("TOFFOLI", self.toffoli),
            ("MCX", self.mcx),
        ]
    }
}

impl Add for GateStats {
    type Output = GateStats;

    fn add(self, o: GateStats) -> GateStats {
        GateStats {
            h: self.h + o.h,
            x: self.x + o.x,
            ry: self.ry + o.ry,
            cnot: self.cnot + o.cnot,
            swap: self.swap + o.swap,
            toffoli: self.toffoli + o.toffoli,
            mcx: self.mcx + o.mcx,
            total: self.total + o.total,
        }
    }
}

impl fmt::Display for GateStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "total {}", self.total)?;
        for (name, n) in self.by_kind() {
            if n > 0 {
                write!(f, ", {name} {n}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{Circuit, Control};

    #[test]
    fn empty_is_zero() {
        assert_eq!(Circuit::new(3).stats(), GateStats::default());
    }

    #[test]
    fn counts_are_additive() {
        let mut a = Circuit::new(3);
        a.append(Gate::h(0)).unwrap();
        a.append(Gate::toffoli(0, 1, 2)).unwrap();
        let mut b = Circuit::new(3);
        b.append(Gate::mcx(vec![Control::negative(2)], 0)).unwrap();
        b.append(Gate::swap(1, 2)).unwrap();
        let both = a.compose(&b).unwrap();
        assert_eq!(both.stats(), a.stats() + b.stats());
        let s = both.stats();
        assert_eq!(s.total, s.by_kind().iter().map(|(_, n)| n).sum::<usize>());
    }
}
