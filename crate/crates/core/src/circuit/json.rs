//! Circuit JSON schema, version 1:
//!
//! ```text
//! {"version":1,"num_qubits":N,
//!  "registers":[{"name":"FSM","qubits":[0,1,...]}],
//!  "gates":[{"kind":"MCX","targets":[19],"controls":[{"q":15,"pol":0},...]},
//!           {"kind":"RY","targets":[3],"controls":[],"angle":0.25}]}
//! ```
//!
//! `pol` is 1 for a positive control and 0 for a negative one. Basis bit
//! strings elsewhere in the crate treat qubit 0 as the least-significant bit.

use serde::{Deserialize, Serialize};

use super::{Circuit, CircuitError, Control, Gate, GateKind, Polarity, Qubit, Register};

pub const CIRCUIT_JSON_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct CircuitDoc {
    version: u32,
    num_qubits: usize,
    registers: Vec<RegisterDoc>,
    gates: Vec<GateDoc>,
}

#[derive(Serialize, Deserialize)]
struct RegisterDoc {
    name: String,
    qubits: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct GateDoc {
    kind: String,
    targets: Vec<usize>,
    controls: Vec<ControlDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    angle: Option<f64>,
}

#[derive(Serialize, Deserialize)]
struct ControlDoc {
    q: usize,
    pol: u8,
}

impl From<&Gate> for GateDoc {
    fn from(g: &Gate) -> Self {
        GateDoc {
            kind: g.kind().name().to_string(),
            targets: g.targets().iter().map(|q| q.0).collect(),
            controls: g
                .controls()
                .iter()
                .map(|c| ControlDoc {
                    q: c.qubit.0,
                    pol: u8::from(c.polarity == Polarity::Positive),
                })
                .collect(),
            angle: match g.kind() {
                GateKind::Ry(theta) => Some(theta),
                _ => None,
            },
        }
    }
}

impl TryFrom<GateDoc> for Gate {
    type Error = CircuitError;

    fn try_from(doc: GateDoc) -> Result<Self, CircuitError> {
        let kind = match (doc.kind.as_str(), doc.angle) {
            ("H", None) => GateKind::H,
            ("X", None) => GateKind::X,
            ("RY", Some(theta)) => GateKind::Ry(theta),
            ("CNOT", None) => GateKind::Cnot,
            ("SWAP", None) => GateKind::Swap,
            ("TOFFOLI", None) => GateKind::Toffoli,
            ("MCX", None) => GateKind::Mcx,
            (other, _) => return Err(CircuitError::Json(format!("bad gate kind/angle combination {other:?}"))),
        };
        let controls = doc
            .controls
            .into_iter()
            .map(|c| match c.pol {
                0 => Ok(Control::negative(c.q)),
                1 => Ok(Control::positive(c.q)),
                p => Err(CircuitError::Json(format!("polarity must be 0 or 1, got {p}"))),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Gate::new(kind, doc.targets.into_iter().map(Qubit).collect(), controls)
    }
}

impl Circuit {
    pub fn to_json(&self) -> String {
        let doc = CircuitDoc {
            version: CIRCUIT_JSON_VERSION,
            num_qubits: self.num_qubits,
            registers: self
                .registers
                .iter()
                .map(|r| RegisterDoc {
                    name: r.name.clone(),
                    qubits: r.qubits.iter().map(|q| q.0).collect(),
                })
                .collect(),
            gates: self.gates.iter().map(GateDoc::from).collect(),
        };
        serde_json::to_string(&doc).expect("circuit document serializes")
    }

    pub fn from_json(text: &str) -> Result<Circuit, CircuitError> {
        let doc: CircuitDoc = serde_json::from_str(text).map_err(|e| CircuitError::Json(e.to_string()))?;
        if doc.version != CIRCUIT_JSON_VERSION {
            return Err(CircuitError::Json(format!("unsupported version {}", doc.version)));
        }
        let mut c = Circuit::new(doc.num_qubits);
        for r in doc.registers {
            c.add_register(Register::new(r.name, r.qubits.into_iter().map(Qubit).collect()))?;
        }
        for g in doc.gates {
            c.append(Gate::try_from(g)?)?;
        }
        Ok(c)
    }
}
