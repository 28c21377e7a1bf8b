use std::fs;
use std::path::{Path, PathBuf};

use qpulba::builder::LayoutMode;
use qpulba::machine::MachineSpec;
use serde::Serialize;

use crate::error::CliError;

/// Everything needed to reproduce one output file. Holds no timestamps or
/// host details, so identical runs write identical manifests.
#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub spec: MachineSpec,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mode: Option<LayoutMode>,
    pub format: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub guard: Option<u128>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub budget: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_branches: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sample: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub program: Option<u128>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub strategy: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub backend: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub block: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trials: Option<usize>,
    pub outputs: Vec<String>,
}

impl RunManifest {
    pub fn new(command: &'static str, spec: MachineSpec, format: &'static str) -> Self {
        RunManifest {
            tool: "qpulba",
            version: env!("CARGO_PKG_VERSION"),
            command,
            spec,
            mode: None,
            format,
            seed: None,
            guard: None,
            budget: None,
            max_branches: None,
            sample: None,
            program: None,
            strategy: None,
            backend: None,
            block: None,
            trials: None,
            outputs: Vec::new(),
        }
    }
}

pub fn manifest_path(out: &Path) -> PathBuf {
    let mut name = out.as_os_str().to_owned();
    name.push(".manifest.json");
    PathBuf::from(name)
}

/// Writes `body` to `out` (or stdout) and, for files, the manifest beside it.
pub fn emit(body: &str, out: Option<&Path>, mut manifest: RunManifest) -> Result<(), CliError> {
    match out {
        None => {
            print!("{body}");
            Ok(())
        }
        Some(path) => {
            fs::write(path, body).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            manifest.outputs.push(path.display().to_string());
            let meta = manifest_path(path);
            let mut text = serde_json::to_string_pretty(&manifest)?;
            text.push('\n');
            fs::write(&meta, text).map_err(|e| CliError::Io(format!("{}: {e}", meta.display())))?;
            Ok(())
        }
    }
}
