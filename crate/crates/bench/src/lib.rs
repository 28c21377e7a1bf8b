//! Fixtures shared by the pipeline benchmarks.

use qpulba::builder::LayoutMode;
use qpulba::machine::MachineSpec;

/// A named machine to benchmark, with the layout it is built in.
pub struct Fixture {
    pub name: &'static str,
    pub spec: MachineSpec,
    pub mode: LayoutMode,
}

/// The 1-2-1 four-cycle machine, the single-cycle 2-2-1 census machine and
/// the full 2-2-1 machine with twelve cycles.
pub fn fixtures() -> Vec<Fixture> {
    vec![
        Fixture {
            name: "1-2-1",
            spec: MachineSpec::program_sized(1, 2).expect("valid spec"),
            mode: LayoutMode::PaperCompat,
        },
        Fixture {
            name: "2-2-1 t=1",
            spec: MachineSpec::relaxed(2, 2, 12, 1).expect("valid spec"),
            mode: LayoutMode::PaperCompat,
        },
        Fixture {
            name: "2-2-1 t=12",
            spec: MachineSpec::program_sized(2, 2).expect("valid spec"),
            mode: LayoutMode::General,
        },
    ]
}
