//! `run.manifest.json`: everything needed to repeat a run and check that
//! its artifacts came out the same.

use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::error::{CliError, Result};

pub const MANIFEST_FILE: &str = "run.manifest.json";

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct Artifact {
    /// File name relative to the manifest's directory.
    pub path: String,
    pub sha256: String,
    pub bytes: u64,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct RunManifest {
    pub tool: String,
    pub version: String,
    pub subcommand: String,
    /// The command line as given, without the program name.
    pub argv: Vec<String>,
    /// Subcommand parameters after parsing, defaults filled in.
    pub params: Value,
    /// Decimal string.
    pub budget: String,
    /// Concrete counting strategy, for subcommands that count.
    pub strategy: Option<String>,
    pub threads: usize,
    pub seed: u64,
    pub format: String,
    pub config_file: Option<String>,
    /// `"ok"` or `"error"`.
    pub status: String,
    pub exit_code: u8,
    pub error: Option<Value>,
    pub wall_time_ms: f64,
    pub artifacts: Vec<Artifact>,
    /// Subcommand-specific extras such as estimated costs.
    pub details: Value,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Writes `bytes` to `dir/name` and returns its checksum entry.
pub fn write_artifact(dir: &Path, name: &str, bytes: &[u8]) -> Result<Artifact> {
    let path = dir.join(name);
    std::fs::write(&path, bytes).map_err(|source| CliError::Io { path, source })?;
    Ok(Artifact { path: name.to_string(), sha256: sha256_hex(bytes), bytes: bytes.len() as u64 })
}

impl RunManifest {
    pub fn write(&self, dir: &Path) -> Result<()> {
        let mut text = serde_json::to_string_pretty(self).expect("manifest serializes");
        text.push('\n');
        let path = dir.join(MANIFEST_FILE);
        std::fs::write(&path, text).map_err(|source| CliError::Io { path, source })
    }

    pub fn read(path: &Path) -> Result<RunManifest> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })?;
        serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("{}: not a run manifest: {e}", path.display())))
    }

    /// Recomputes every artifact checksum in `dir`; returns the names that differ or are missing.
    pub fn verify_artifacts(&self, dir: &Path) -> Vec<String> {
        self.artifacts
            .iter()
            .filter(|a| std::fs::read(dir.join(&a.path)).map_or(true, |b| sha256_hex(&b) != a.sha256))
            .map(|a| a.path.clone())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_digest() {
        assert_eq!(sha256_hex(b"abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    }

    #[test]
    fn round_trip_and_verify() {
        let dir = tempfile::tempdir().unwrap();
        let a = write_artifact(dir.path(), "out.json", b"{}\n").unwrap();
        let m = RunManifest {
            tool: "vmv".into(),
            version: "0".into(),
            subcommand: "count-j".into(),
            argv: vec!["count-j".into()],
            params: serde_json::json!({"k": 3}),
            budget: "10".into(),
            strategy: None,
            threads: 1,
            seed: 0,
            format: "json".into(),
            config_file: None,
            status: "ok".into(),
            exit_code: 0,
            error: None,
            wall_time_ms: 1.5,
            artifacts: vec![a],
            details: Value::Null,
        };
        m.write(dir.path()).unwrap();
        let back = RunManifest::read(&dir.path().join(MANIFEST_FILE)).unwrap();
        assert_eq!(back, m);
        assert!(back.verify_artifacts(dir.path()).is_empty());
        std::fs::write(dir.path().join("out.json"), b"[]").unwrap();
        assert_eq!(back.verify_artifacts(dir.path()), vec!["out.json".to_string()]);
    }
}
