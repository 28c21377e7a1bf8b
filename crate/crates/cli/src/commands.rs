use std::fmt::Write as _;

use qpulba::builder::{build_machine, plan_layout, LayoutMode, QubitLayout};
use qpulba::circuit::Circuit;
use qpulba::machine::{
    enumerate, records_to_csv, render_tape, run, sample, tape_histogram, EnumerationRecord,
};
use qpulba::qasm::emit_qasm;
use qpulba::sim::{bitstring, register_value, simulate, Backend, SimOutcome, SparseState};
use qpulba::transpile::{census, census_spec, transpile, LoweringStrategy};
use qpulba::verify::{check_block, check_equivalence, BlockKind, EquivalenceOptions};
use serde_json::json;

use crate::error::CliError;
use crate::manifest::{emit, RunManifest};
use crate::{Command, Format, OutArgs};

/// Picks the output format, rejecting ones the command cannot write.
fn format(out: &OutArgs, default: Format, allowed: &[Format], command: &str) -> Result<Format, CliError> {
    let f = out.format.unwrap_or(default);
    if allowed.contains(&f) {
        Ok(f)
    } else {
        let names: Vec<_> = allowed.iter().map(|f| f.name()).collect();
        Err(CliError::Usage(format!(
            "{command} cannot write {} (choose from {})",
            f.name(),
            names.join(", ")
        )))
    }
}

fn json_text(value: &impl serde::Serialize) -> Result<String, CliError> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    Ok(text)
}

fn strategy_name(s: LoweringStrategy) -> String {
    match s {
        LoweringStrategy::Borrowed => "borrowed".into(),
        LoweringStrategy::Clean => "clean".into(),
    }
}

fn lowered(circuit: Circuit, strategy: Option<LoweringStrategy>) -> Result<Circuit, CliError> {
    match strategy {
        Some(s) => Ok(transpile(&circuit, s)?),
        None => Ok(circuit),
    }
}

pub fn dispatch(command: Command) -> Result<(), CliError> {
    match command {
        Command::Plan { spec, mode, out } => {
            let mode: LayoutMode = mode.mode.into();
            let spec = spec.resolve(mode)?;
            let f = format(&out, Format::Txt, &[Format::Txt, Format::Json], "plan")?;
            let layout = plan_layout(&spec, mode)?;
            let body = match f {
                Format::Json => json_text(&layout.report_json())?,
                _ => layout.report(),
            };
            let mut m = RunManifest::new("plan", spec, f.name());
            m.mode = Some(mode);
            emit(&body, out.out.as_deref(), m)?;
            eprintln!("{spec}: {} qubits", layout.num_qubits());
            Ok(())
        }
        Command::Enumerate {
            spec,
            out,
            guard,
            sample: count,
            seed,
            program,
        } => {
            let spec = spec.resolve(LayoutMode::General)?;
            let f = format(&out, Format::Csv, &[Format::Csv, Format::Json, Format::Txt], "enumerate")?;
            let records = match (program, count) {
                (Some(p), _) => {
                    let config = run(p, &spec)?;
                    vec![EnumerationRecord {
                        program: p,
                        final_tape: render_tape(&config),
                        final_state: config.state,
                        final_head: config.head,
                    }]
                }
                (None, Some(n)) => sample(&spec, n, seed)?,
                (None, None) => enumerate(&spec, guard)?,
            };
            let hist = tape_histogram(&records);
            let body = match f {
                Format::Csv => records_to_csv(&records)?,
                Format::Json => json_text(&json!({ "spec": spec, "records": records, "histogram": hist }))?,
                _ => {
                    let mut s = String::new();
                    let _ = writeln!(s, "{} programs of {spec}", records.len());
                    let mut rows: Vec<_> = hist.iter().collect();
                    rows.sort_by(|a, b| b.1.cmp(a.1).then(a.0.cmp(b.0)));
                    for (tape, n) in rows {
                        let _ = writeln!(s, "{tape} {n}");
                    }
                    s
                }
            };
            let mut m = RunManifest::new("enumerate", spec, f.name());
            match (program, count) {
                (Some(p), _) => m.program = Some(p),
                (None, Some(n)) => {
                    m.sample = Some(n);
                    m.seed = Some(seed);
                }
                (None, None) => m.guard = Some(guard),
            }
            emit(&body, out.out.as_deref(), m)?;
            eprintln!("{} records, {} distinct tapes", records.len(), hist.len());
            Ok(())
        }
        Command::Build { spec, mode, out } => {
            let mode: LayoutMode = mode.mode.into();
            let spec = spec.resolve(mode)?;
            let f = format(&out, Format::Json, &[Format::Json, Format::Txt], "build")?;
            let (layout, circuit) = build_machine(&spec, mode)?;
            let body = match f {
                Format::Json => {
                    let mut s = circuit.to_json();
                    s.push('\n');
                    s
                }
                _ => circuit_text(&layout, &circuit),
            };
            let mut m = RunManifest::new("build", spec, f.name());
            m.mode = Some(mode);
            emit(&body, out.out.as_deref(), m)?;
            eprintln!("{spec}: {} qubits, {} gates", circuit.num_qubits(), circuit.len());
            Ok(())
        }
        Command::Transpile {
            spec,
            mode,
            out,
            strategy,
        } => {
            let mode: LayoutMode = mode.mode.into();
            let spec = spec.resolve(mode)?;
            let strategy: LoweringStrategy = strategy.into();
            let f = format(&out, Format::Json, &[Format::Json, Format::Qasm, Format::Txt], "transpile")?;
            let (layout, circuit) = build_machine(&spec, mode)?;
            let low = transpile(&circuit, strategy)?;
            let body = match f {
                Format::Json => {
                    let mut s = low.to_json();
                    s.push('\n');
                    s
                }
                Format::Qasm => emit_qasm(&low)?,
                _ => {
                    let mut s = String::new();
                    let _ = writeln!(s, "{spec} lowered with {} strategy", strategy_name(strategy));
                    let _ = writeln!(s, "qubits: {} -> {}", layout.num_qubits(), low.num_qubits());
                    let _ = writeln!(s, "{:<8} {:>8} {:>8}", "gate", "before", "after");
                    let before = circuit.stats();
                    let after = low.stats();
                    for ((name, a), (_, b)) in before.by_kind().iter().zip(after.by_kind().iter()) {
                        let _ = writeln!(s, "{name:<8} {a:>8} {b:>8}");
                    }
                    let _ = writeln!(s, "{:<8} {:>8} {:>8}", "TOTAL", before.total, after.total);
                    if spec == census_spec() && mode == LayoutMode::PaperCompat {
                        s.push_str(&census(strategy)?.render());
                    }
                    s
                }
            };
            let mut m = RunManifest::new("transpile", spec, f.name());
            m.mode = Some(mode);
            m.strategy = Some(strategy_name(strategy));
            emit(&body, out.out.as_deref(), m)?;
            eprintln!("{spec}: {} native gates on {} qubits", low.len(), low.num_qubits());
            Ok(())
        }
        Command::Simulate {
            spec,
            mode,
            out,
            backend,
            strategy,
            program,
            max_branches,
        } => {
            let mode: LayoutMode = mode.mode.into();
            let spec = spec.resolve(mode)?;
            let backend: Backend = backend.into();
            let strategy: Option<LoweringStrategy> = strategy.map(Into::into);
            let f = format(&out, Format::Txt, &[Format::Txt, Format::Json], "simulate")?;
            if max_branches.is_some() && backend != Backend::Sparse {
                return Err(CliError::Usage("--max-branches applies to the sparse backend only".into()));
            }
            if let Some(p) = program {
                if p >= spec.program_count() {
                    return Err(CliError::Usage(format!("program {p} out of range (P = {})", spec.program_count())));
                }
            }
            let (layout, circuit) = build_machine(&spec, mode)?;
            let circuit = lowered(circuit, strategy)?;
            let outcome = match max_branches {
                Some(limit) => {
                    let mut state = SparseState::basis(circuit.num_qubits(), 0)?.with_branch_limit(limit);
                    state.apply(&circuit)?;
                    SimOutcome {
                        num_qubits: circuit.num_qubits(),
                        branches: state.into_branches(),
                    }
                }
                None => simulate(&circuit, backend, 0)?,
            };
            let branch = program.map(|p| {
                outcome
                    .branches
                    .iter()
                    .copied()
                    .find(|&(index, _)| register_value(index, layout.fsm()) == p)
            });
            let body = match f {
                Format::Json => {
                    let mut value = outcome.to_json();
                    value["tape_marginal"] = outcome.marginal(layout.tape()).to_json();
                    if let Some(b) = branch {
                        value["program_branch"] = match b {
                            Some((index, amp)) => branch_json(&layout, index, amp),
                            None => serde_json::Value::Null,
                        };
                    }
                    json_text(&value)?
                }
                _ => simulate_text(&layout, &circuit, &outcome, program, branch.flatten()),
            };
            let mut m = RunManifest::new("simulate", spec, f.name());
            m.mode = Some(mode);
            m.backend = Some(match backend {
                Backend::Sparse => "sparse".into(),
                Backend::Dense => "dense".into(),
            });
            m.strategy = strategy.map(strategy_name);
            m.program = program;
            m.max_branches = max_branches;
            emit(&body, out.out.as_deref(), m)?;
            eprintln!("{} branches, norm {:.12}", outcome.branches.len(), outcome.norm_sqr());
            Ok(())
        }
        Command::Verify {
            spec,
            mode,
            out,
            strategy,
            budget,
        } => {
            let mode: LayoutMode = mode.mode.into();
            let spec = spec.resolve(mode)?;
            let strategy: Option<LoweringStrategy> = strategy.map(Into::into);
            let f = format(&out, Format::Txt, &[Format::Txt, Format::Json], "verify")?;
            let options = EquivalenceOptions {
                mode,
                budget,
                lowering: strategy,
            };
            let report = check_equivalence(&spec, options)?;
            let body = match f {
                Format::Json => json_text(&json!({ "passed": report.passed(), "report": report }))?,
                _ => report.render(),
            };
            let mut m = RunManifest::new("verify", spec, f.name());
            m.mode = Some(mode);
            m.budget = Some(budget);
            m.strategy = strategy.map(strategy_name);
            emit(&body, out.out.as_deref(), m)?;
            eprintln!("{}", report.summary());
            if report.passed() {
                Ok(())
            } else {
                Err(CliError::Failed(report.summary()))
            }
        }
        Command::Export {
            spec,
            mode,
            out,
            strategy,
        } => {
            let mode: LayoutMode = mode.mode.into();
            let spec = spec.resolve(mode)?;
            let strategy: LoweringStrategy = strategy.into();
            let f = format(&out, Format::Qasm, &[Format::Qasm], "export")?;
            let (_, circuit) = build_machine(&spec, mode)?;
            let low = transpile(&circuit, strategy)?;
            let body = emit_qasm(&low)?;
            let mut m = RunManifest::new("export", spec, f.name());
            m.mode = Some(mode);
            m.strategy = Some(strategy_name(strategy));
            emit(&body, out.out.as_deref(), m)?;
            eprintln!("{} gates on {} qubits", low.len(), low.num_qubits());
            Ok(())
        }
        Command::Blocktest {
            spec,
            out,
            block,
            trials,
            seed,
        } => {
            let spec = spec.resolve(LayoutMode::General)?;
            let f = format(&out, Format::Txt, &[Format::Txt, Format::Json], "blocktest")?;
            if trials == 0 {
                return Err(CliError::Usage("--trials must be at least 1".into()));
            }
            let blocks: Vec<BlockKind> = match block {
                Some(b) => vec![b.into()],
                None => BlockKind::ALL.to_vec(),
            };
            let reports = blocks
                .iter()
                .map(|&b| check_block(b, &spec, trials, seed))
                .collect::<Result<Vec<_>, _>>()?;
            let failed = reports.iter().filter(|r| !r.passed()).count();
            let body = match f {
                Format::Json => json_text(&json!({ "passed": failed == 0, "reports": reports }))?,
                _ => reports.iter().map(|r| r.render()).collect(),
            };
            let mut m = RunManifest::new("blocktest", spec, f.name());
            m.seed = Some(seed);
            m.trials = Some(trials);
            m.block = block.map(|b| format!("{:?}", BlockKind::from(b)).to_lowercase());
            emit(&body, out.out.as_deref(), m)?;
            let summary = format!("{}/{} blocks pass", reports.len() - failed, reports.len());
            eprintln!("{summary}");
            if failed == 0 {
                Ok(())
            } else {
                Err(CliError::Failed(summary))
            }
        }
    }
}

fn circuit_text(layout: &QubitLayout, circuit: &Circuit) -> String {
    let mut s = layout.report();
    let stats = circuit.stats();
    let _ = writeln!(s);
    for (name, n) in stats.by_kind() {
        let _ = writeln!(s, "{name:<8} {n:>8}");
    }
    let _ = writeln!(s, "{:<8} {:>8}", "TOTAL", stats.total);
    let _ = writeln!(s);
    for (i, g) in circuit.gates().iter().enumerate() {
        let _ = writeln!(s, "{i:>6}  {g}");
    }
    s
}

fn branch_json(layout: &QubitLayout, index: u128, amplitude: f64) -> serde_json::Value {
    let width = |r: &[qpulba::Qubit]| bitstring(register_value(index, r), r.len());
    json!({
        "program": register_value(index, layout.fsm()).to_string(),
        "amplitude": amplitude,
        "tape": tape_cells(layout, index),
        "head": register_value(index, layout.head()).to_string(),
        "state": width(layout.state()),
    })
}

/// Tape symbols from cell 0, one character per cell.
fn tape_cells(layout: &QubitLayout, index: u128) -> String {
    (0..layout.spec().cells())
        .map(|i| {
            let v = register_value(index, layout.tape_cell(i)) as u32;
            char::from_digit(v, 36).unwrap_or('?')
        })
        .collect()
}

fn simulate_text(
    layout: &QubitLayout,
    circuit: &Circuit,
    outcome: &SimOutcome,
    program: Option<u128>,
    branch: Option<(u128, f64)>,
) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{} qubits, {} gates", circuit.num_qubits(), circuit.len());
    let _ = writeln!(s, "{} branches, norm {:.12}", outcome.branches.len(), outcome.norm_sqr());
    let _ = writeln!(s, "TAPE marginal (cell 0 is the least significant bit):");
    for (bits, p) in outcome.marginal(layout.tape()).rows() {
        let _ = writeln!(s, "  {bits} {p:.12}");
    }
    if let Some(p) = program {
        match branch {
            Some((index, amp)) => {
                let _ = writeln!(
                    s,
                    "program {p}: tape {} head {} state {} amplitude {amp:.12}",
                    tape_cells(layout, index),
                    register_value(index, layout.head()),
                    register_value(index, layout.state()),
                );
            }
            None => {
                let _ = writeln!(s, "program {p}: no branch");
            }
        }
    }
    s
}
