//! One JSON manifest per file-writing run.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{Context, Result};
use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub parameters: BTreeMap<String, Value>,
    pub artifact_paths: Vec<String>,
    pub tool_version: String,
    pub wall_time: f64,
    pub exit_code: u8,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

/// Collects artifacts while a command runs; [`Recorder::finish`] writes them
/// and the manifest.
pub struct Recorder {
    command: String,
    out: PathBuf,
    started: Instant,
    parameters: BTreeMap<String, Value>,
    artifacts: Vec<String>,
    warnings: Vec<String>,
}

impl Recorder {
    pub fn new(command: &str, out: &Path, started: Instant) -> Result<Self> {
        std::fs::create_dir_all(out).with_context(|| format!("creating {}", out.display()))?;
        Ok(Recorder {
            command: command.to_string(),
            out: out.to_path_buf(),
            started,
            parameters: BTreeMap::new(),
            artifacts: Vec::new(),
            warnings: Vec::new(),
        })
    }

    pub fn param(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        let v = serde_json::to_value(value).unwrap_or(Value::Null);
        self.parameters.insert(key.to_string(), v);
        self
    }

    pub fn warn(&mut self, message: impl Into<String>) {
        self.warnings.push(message.into());
    }

    /// Writes `contents` to `name` inside the output directory.
    pub fn write(&mut self, name: &str, contents: &str) -> Result<PathBuf> {
        let path = self.out.join(name);
        std::fs::write(&path, contents).with_context(|| format!("writing {}", path.display()))?;
        self.artifacts.push(path.display().to_string());
        Ok(path)
    }

    pub fn finish(self, exit_code: u8) -> Result<PathBuf> {
        let manifest = RunManifest {
            command: self.command.clone(),
            parameters: self.parameters,
            artifact_paths: self.artifacts,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            wall_time: self.started.elapsed().as_secs_f64(),
            exit_code,
            warnings: self.warnings,
        };
        let path = self.out.join(format!("{}.manifest.json", self.command));
        std::fs::write(&path, serde_json::to_string_pretty(&manifest)? + "\n")
            .with_context(|| format!("writing {}", path.display()))?;
        Ok(path)
    }
}
