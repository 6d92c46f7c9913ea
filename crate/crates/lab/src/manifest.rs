use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use anyhow::Context;
use serde::{Deserialize, Serialize};

/// Provenance record written next to every output file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    pub parameters: BTreeMap<String, String>,
    pub seed: u64,
    pub artifacts: Vec<String>,
    pub tool_version: String,
    /// Arguments that reproduce the run, program name excluded.
    pub argv: Vec<String>,
}

impl RunManifest {
    pub fn new(command: &str, parameters: BTreeMap<String, String>, seed: u64, argv: Vec<String>) -> Self {
        RunManifest {
            command: command.to_string(),
            parameters,
            seed,
            artifacts: Vec::new(),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            argv,
        }
    }

    /// `<artifact>.manifest.json`.
    pub fn path_for(artifact: &Path) -> PathBuf {
        let mut name = artifact.as_os_str().to_owned();
        name.push(".manifest.json");
        PathBuf::from(name)
    }

    pub fn write(&self, artifact: &Path) -> anyhow::Result<PathBuf> {
        let path = Self::path_for(artifact);
        let text = serde_json::to_string_pretty(self)?;
        std::fs::write(&path, text + "\n").with_context(|| format!("writing {}", path.display()))?;
        Ok(path)
    }

    pub fn read(path: &Path) -> anyhow::Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
    }
}
