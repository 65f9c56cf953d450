//! Machine-readable run manifest.
//!
//! Records what produced the tables: the tool version, the command, a hash
//! of the effective configuration after every override, and the file names
//! written. No timestamps or host details, so reruns of the same config are
//! byte-identical here too.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::config::{canonical_json, ScenarioConfig};

#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub tool: &'static str,
    pub version: &'static str,
    pub schema_version: u32,
    pub command: String,
    /// SHA-256 of the canonical JSON of the effective configuration.
    pub config_sha256: String,
    pub outputs: Vec<String>,
}

impl RunManifest {
    pub fn new(command: &str, config: &ScenarioConfig, outputs: &[String]) -> Self {
        let mut hasher = Sha256::new();
        hasher.update(canonical_json(config).as_bytes());
        Self {
            tool: "contispine",
            version: env!("CARGO_PKG_VERSION"),
            schema_version: config.schema_version,
            command: command.to_string(),
            config_sha256: format!("{:x}", hasher.finalize()),
            outputs: outputs.to_vec(),
        }
    }

    /// Write `<dir>/run_manifest.json` and return the path.
    pub fn write(&self, dir: &Path) -> io::Result<PathBuf> {
        let path = dir.join("run_manifest.json");
        let mut text = serde_json::to_string_pretty(self).expect("manifest serializes");
        text.push('\n');
        fs::write(&path, text)?;
        Ok(path)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::from_value;

    #[test]
    fn equal_configs_hash_equal_and_differ_on_change() {
        let config = from_value(serde_json::json!({ "schema_version": 1 })).unwrap();
        let a = RunManifest::new("design", &config, &["design_sweep.csv".to_string()]);
        let b = RunManifest::new("design", &config, &["design_sweep.csv".to_string()]);
        assert_eq!(a.config_sha256, b.config_sha256);
        assert_eq!(a.config_sha256.len(), 64);

        let mut changed = config.clone();
        changed.statics.cable_force = 200.0;
        let c = RunManifest::new("design", &changed, &[]);
        assert_ne!(a.config_sha256, c.config_sha256);
    }
}
