//! Run manifests written next to every output file.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::CliError;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Serialize)]
struct InputHash {
    path: String,
    sha256: String,
}

#[derive(Serialize)]
struct RunManifest<'a> {
    command: &'a str,
    args: &'a [String],
    version: &'static str,
    inputs: Vec<InputHash>,
    outputs: Vec<String>,
    duration_seconds: f64,
}

pub struct Run {
    pub command: &'static str,
    pub args: Vec<String>,
    started: Instant,
}

impl Run {
    pub fn new(command: &'static str, args: Vec<String>) -> Self {
        Self {
            command,
            args,
            started: Instant::now(),
        }
    }

    /// Writes `manifest` describing this run, hashing each input file.
    pub fn write(&self, manifest: &Path, inputs: &[PathBuf], outputs: &[PathBuf]) -> Result<(), CliError> {
        let inputs = inputs
            .iter()
            .map(|p| {
                let bytes = fs::read(p).map_err(|e| CliError::io(p, e))?;
                Ok(InputHash {
                    path: p.display().to_string(),
                    sha256: format!("{:x}", Sha256::digest(&bytes)),
                })
            })
            .collect::<Result<Vec<_>, CliError>>()?;
        let doc = RunManifest {
            command: self.command,
            args: &self.args,
            version: VERSION,
            inputs,
            outputs: outputs.iter().map(|p| p.display().to_string()).collect(),
            duration_seconds: self.started.elapsed().as_secs_f64(),
        };
        write_json(manifest, &doc)
    }
}

/// `out.csv` -> `out.csv.manifest.json`.
pub fn sidecar_path(output: &Path) -> PathBuf {
    let mut name = output.file_name().unwrap_or_default().to_os_string();
    name.push(".manifest.json");
    output.with_file_name(name)
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value).expect("serializable");
    text.push('\n');
    write_text(path, &text)
}

pub fn write_text(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::io(path, e))
}
