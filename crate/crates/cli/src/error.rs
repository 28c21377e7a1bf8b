use qpulba::builder::BuildError;
use qpulba::machine::MachineError;
use qpulba::qasm::QasmError;
use qpulba::sim::SimError;
use qpulba::transpile::TranspileError;
use qpulba::verify::VerifyError;
use thiserror::Error;

/// Every failure the driver reports, one exit code per class.
#[derive(Debug, Error)]
pub enum CliError {
    /// A check ran to completion and found a mismatch.
    #[error("verification failed: {0}")]
    Failed(String),
    /// Bad flag combination or a spec the toolkit cannot build.
    #[error("{0}")]
    Usage(String),
    /// A guard, budget or width cap refused the job before it ran.
    #[error("refused: {0}")]
    Refused(String),
    #[error("i/o: {0}")]
    Io(String),
    #[error("internal: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Failed(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Refused(_) => 3,
            CliError::Io(_) | CliError::Internal(_) => 4,
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Internal(e.to_string())
    }
}

impl From<MachineError> for CliError {
    fn from(e: MachineError) -> Self {
        match e {
            MachineError::GuardExceeded { .. } => CliError::Refused(e.to_string()),
            MachineError::Csv(_) => CliError::Io(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<BuildError> for CliError {
    fn from(e: BuildError) -> Self {
        match e {
            BuildError::Circuit(_) => CliError::Internal(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<TranspileError> for CliError {
    fn from(e: TranspileError) -> Self {
        match e {
            TranspileError::InsufficientAncilla { .. } => CliError::Refused(e.to_string()),
            TranspileError::Build(b) => b.into(),
            _ => CliError::Internal(e.to_string()),
        }
    }
}

impl From<SimError> for CliError {
    fn from(e: SimError) -> Self {
        match e {
            SimError::TooManyQubits { .. } | SimError::BranchLimit { .. } => CliError::Refused(e.to_string()),
            _ => CliError::Internal(e.to_string()),
        }
    }
}

impl From<VerifyError> for CliError {
    fn from(e: VerifyError) -> Self {
        match e {
            VerifyError::BudgetExceeded { .. } => CliError::Refused(e.to_string()),
            VerifyError::Build(b) => b.into(),
            VerifyError::Transpile(t) => t.into(),
            VerifyError::Sim(s) => s.into(),
            VerifyError::Circuit(c) => CliError::Internal(c.to_string()),
        }
    }
}

impl From<QasmError> for CliError {
    fn from(e: QasmError) -> Self {
        CliError::Internal(e.to_string())
    }
}
