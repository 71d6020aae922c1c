//! Run manifests: a flat key=value record of what a command ran and what it
//! wrote, with SHA-256 content digests of every emitted file.
//!
//! Manifests contain no timestamps or absolute paths, so re-running a
//! command with identical flags and seed reproduces the manifest
//! byte-for-byte.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use sha2::{Digest, Sha256};

use crate::CliError;

/// CSV schema marker written as the first line of every export.
pub fn csv_header() -> String {
    let version = env!("CARGO_PKG_VERSION");
    let short = version
        .rsplit_once('.')
        .map(|(mm, _)| mm)
        .unwrap_or(version);
    format!("# susyqm-kit v{short}")
}

#[derive(Debug, Clone)]
pub struct RunManifest {
    command: String,
    parameters: Vec<(String, String)>,
    seed: u64,
    outputs: Vec<(String, String)>,
}

impl RunManifest {
    pub fn new(command: &str, seed: u64) -> Self {
        RunManifest {
            command: command.to_string(),
            parameters: Vec::new(),
            seed,
            outputs: Vec::new(),
        }
    }

    pub fn parameter(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.parameters.push((key.to_string(), value.to_string()));
        self
    }

    /// Records an emitted file under its basename with the digest of the
    /// bytes on disk.
    pub fn record_output(&mut self, path: &Path) -> Result<(), CliError> {
        let bytes = fs::read(path)
            .map_err(|e| CliError::runtime(format!("reading back {}: {e}", path.display())))?;
        let digest = Sha256::digest(&bytes);
        let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
        let name = path
            .file_name()
            .map(|n| n.to_string_lossy().into_owned())
            .unwrap_or_else(|| path.display().to_string());
        self.outputs.push((name, format!("sha256:{hex}")));
        Ok(())
    }

    /// The flat key=value rendering, newline-terminated.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command={}", self.command);
        for (k, v) in &self.parameters {
            let _ = writeln!(out, "parameters.{k}={v}");
        }
        let _ = writeln!(out, "seed={}", self.seed);
        let _ = writeln!(out, "version={}", env!("CARGO_PKG_VERSION"));
        for (name, digest) in &self.outputs {
            let _ = writeln!(out, "output.{name}={digest}");
        }
        out
    }

    /// Writes `manifest.txt` into `dir` and records nothing further.
    pub fn write_to(&self, dir: &Path) -> Result<(), CliError> {
        let path = dir.join("manifest.txt");
        fs::write(&path, self.render())
            .map_err(|e| CliError::runtime(format!("writing {}: {e}", path.display())))
    }
}
