mod commands;
mod error;
mod manifest;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qpulba::builder::LayoutMode;
use qpulba::machine::{MachineSpec, DEFAULT_GUARD};
use qpulba::sim::Backend;
use qpulba::transpile::LoweringStrategy;
use qpulba::verify::{BlockKind, DEFAULT_BRANCH_BUDGET};

use error::CliError;

/// Plan, build, lower, simulate and verify quantum parallel universal
/// linear bounded automata.
///
/// Exit codes: 0 success, 1 verification failed, 2 usage error or invalid
/// machine, 3 refused by a guard, budget or width cap, 4 i/o or internal error.
#[derive(Debug, Parser)]
#[command(name = "qpulba", version)]
struct Cli {
    /// Worker threads for enumeration and verification.
    #[arg(long, global = true, env = "QPULBA_JOBS")]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Qubit layout and register accounting.
    Plan {
        #[command(flatten)]
        spec: SpecArgs,
        #[command(flatten)]
        mode: ModeArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Run every program classically and tabulate the final tapes.
    Enumerate {
        #[command(flatten)]
        spec: SpecArgs,
        #[command(flatten)]
        out: OutArgs,
        /// Refuse exhaustive sweeps over more programs than this.
        #[arg(long, default_value_t = DEFAULT_GUARD)]
        guard: u128,
        /// Draw this many programs at random instead of sweeping.
        #[arg(long, conflicts_with = "program")]
        sample: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Run a single program.
        #[arg(long)]
        program: Option<u128>,
    },
    /// Synthesize the machine circuit.
    Build {
        #[command(flatten)]
        spec: SpecArgs,
        #[command(flatten)]
        mode: ModeArgs,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Lower the machine circuit to H, X, CNOT, SWAP and Toffoli.
    Transpile {
        #[command(flatten)]
        spec: SpecArgs,
        #[command(flatten)]
        mode: ModeArgs,
        #[command(flatten)]
        out: OutArgs,
        #[arg(long, value_enum, default_value_t = StrategyArg::Borrowed)]
        strategy: StrategyArg,
    },
    /// Simulate the machine circuit from |0...0>.
    Simulate {
        #[command(flatten)]
        spec: SpecArgs,
        #[command(flatten)]
        mode: ModeArgs,
        #[command(flatten)]
        out: OutArgs,
        #[arg(long, value_enum, default_value_t = BackendArg::Sparse)]
        backend: BackendArg,
        /// Lower before simulating.
        #[arg(long, value_enum)]
        strategy: Option<StrategyArg>,
        /// Report the branch that holds this program.
        #[arg(long)]
        program: Option<u128>,
        /// Abort the sparse backend once it holds more branches than this.
        #[arg(long)]
        max_branches: Option<usize>,
    },
    /// Compare every branch of the simulated machine with the classical run.
    Verify {
        #[command(flatten)]
        spec: SpecArgs,
        #[command(flatten)]
        mode: ModeArgs,
        #[command(flatten)]
        out: OutArgs,
        /// Lower before simulating.
        #[arg(long, value_enum)]
        strategy: Option<StrategyArg>,
        /// Refuse machines with more programs than this.
        #[arg(long, default_value_t = DEFAULT_BRANCH_BUDGET)]
        budget: usize,
    },
    /// Write the lowered machine as OpenQASM 2.0.
    Export {
        #[command(flatten)]
        spec: SpecArgs,
        #[command(flatten)]
        mode: ModeArgs,
        #[command(flatten)]
        out: OutArgs,
        #[arg(long, value_enum, default_value_t = StrategyArg::Borrowed)]
        strategy: StrategyArg,
    },
    /// Check single blocks on seeded unequal superpositions.
    Blocktest {
        #[command(flatten)]
        spec: SpecArgs,
        #[command(flatten)]
        out: OutArgs,
        /// Block to test; all blocks when omitted.
        #[arg(long, value_enum)]
        block: Option<BlockArg>,
        #[arg(long, default_value_t = 16)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Clone, Args)]
struct SpecArgs {
    /// Number of states.
    #[arg(short = 'm', long = "states")]
    states: usize,
    /// Number of tape symbols.
    #[arg(short = 'n', long = "symbols")]
    symbols: usize,
    /// Tape cells (defaults to the cycle count).
    #[arg(short = 'c', long = "cells")]
    cells: Option<usize>,
    /// Cycles (defaults to the program size in bits).
    #[arg(short = 't', long = "cycles")]
    cycles: Option<usize>,
}

#[derive(Debug, Clone, Args)]
struct ModeArgs {
    #[arg(long, value_enum, default_value_t = ModeArg::General)]
    mode: ModeArg,
}

#[derive(Debug, Clone, Args)]
struct OutArgs {
    /// Output file; stdout when omitted. A manifest is written beside it.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    General,
    PaperCompat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StrategyArg {
    Borrowed,
    Clean,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BackendArg {
    Sparse,
    Dense,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BlockArg {
    Init,
    Read,
    Delta,
    Write,
    Move,
    Reset,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Qasm,
    Txt,
}

impl Format {
    fn name(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Qasm => "qasm",
            Format::Txt => "txt",
        }
    }
}

impl From<ModeArg> for LayoutMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::General => LayoutMode::General,
            ModeArg::PaperCompat => LayoutMode::PaperCompat,
        }
    }
}

impl From<StrategyArg> for LoweringStrategy {
    fn from(s: StrategyArg) -> Self {
        match s {
            StrategyArg::Borrowed => LoweringStrategy::Borrowed,
            StrategyArg::Clean => LoweringStrategy::Clean,
        }
    }
}

impl From<BackendArg> for Backend {
    fn from(b: BackendArg) -> Self {
        match b {
            BackendArg::Sparse => Backend::Sparse,
            BackendArg::Dense => Backend::Dense,
        }
    }
}

impl From<BlockArg> for BlockKind {
    fn from(b: BlockArg) -> Self {
        match b {
            BlockArg::Init => BlockKind::Init,
            BlockArg::Read => BlockKind::Read,
            BlockArg::Delta => BlockKind::Delta,
            BlockArg::Write => BlockKind::Write,
            BlockArg::Move => BlockKind::Move,
            BlockArg::Reset => BlockKind::Reset,
        }
    }
}

impl SpecArgs {
    /// Applies the defaults `t = q_delta` and `c = t`. The paper-compatible
    /// layouts include one machine outside the causal-cone bound, so that
    /// mode skips the bound.
    fn resolve(&self, mode: LayoutMode) -> Result<MachineSpec, CliError> {
        let probe = MachineSpec::relaxed(self.states, self.symbols, 1, 1)?;
        let cycles = self.cycles.unwrap_or_else(|| probe.delta_bits());
        let cells = self.cells.unwrap_or(cycles);
        let spec = match mode {
            LayoutMode::General => MachineSpec::new(self.states, self.symbols, cells, cycles)?,
            LayoutMode::PaperCompat => MachineSpec::relaxed(self.states, self.symbols, cells, cycles)?,
        };
        Ok(spec)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.jobs {
        Some(0) => Err(CliError::Usage("--jobs must be at least 1".into())),
        Some(jobs) => rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| CliError::Internal(e.to_string()))
            .and_then(|pool| pool.install(|| commands::dispatch(cli.command))),
        None => commands::dispatch(cli.command),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("qpulba: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
