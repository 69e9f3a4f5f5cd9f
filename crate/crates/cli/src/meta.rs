use std::path::{Path, PathBuf};
use std::process::Command;

use serde::Serialize;
use sha2::{Digest, Sha256};

use optomech_core::{Config, SpectrumMethod};

use crate::error::Result;
use crate::sweep::{SweepOptions, SweepSpec};
use crate::table::Table;

/// Sidecar written next to every CSV.
#[derive(Debug, Clone, Serialize)]
pub struct Metadata {
    pub command: String,
    pub params_hash: String,
    pub git_revision: String,
    pub version: &'static str,
    pub method: SpectrumMethod,
    pub oracle: bool,
    pub config: Config,
    pub sweeps: Vec<SweepSpec>,
    pub columns: Vec<String>,
    pub rows: usize,
}

impl Metadata {
    pub fn new(
        command: &str,
        config: &Config,
        opts: &SweepOptions,
        sweeps: Vec<SweepSpec>,
        table: &Table,
    ) -> Self {
        Self {
            command: command.to_string(),
            params_hash: params_hash(config),
            git_revision: git_revision(),
            version: env!("CARGO_PKG_VERSION"),
            method: opts.method,
            oracle: opts.oracle,
            config: *config,
            sweeps,
            columns: table.header.clone(),
            rows: table.rows.len(),
        }
    }
}

/// SHA-256 of the config's JSON serialization, hex encoded.
pub fn params_hash(config: &Config) -> String {
    let json = serde_json::to_string(config).expect("config serializes");
    Sha256::digest(json.as_bytes())
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

pub fn git_revision() -> String {
    Command::new("git")
        .args(["rev-parse", "HEAD"])
        .output()
        .ok()
        .filter(|o| o.status.success())
        .and_then(|o| String::from_utf8(o.stdout).ok())
        .map(|s| s.trim().to_string())
        .filter(|s| !s.is_empty())
        .unwrap_or_else(|| "unknown".to_string())
}

/// Write `<stem>.csv` and `<stem>.meta.json` into `dir`.
pub fn write_dataset(
    dir: &Path,
    stem: &str,
    table: &Table,
    meta: &Metadata,
) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir)?;
    let csv = dir.join(format!("{stem}.csv"));
    let sidecar = dir.join(format!("{stem}.meta.json"));
    table.write(&csv)?;
    let json = serde_json::to_string_pretty(meta).expect("metadata serializes");
    std::fs::write(&sidecar, json + "\n")?;
    Ok(vec![csv, sidecar])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hash_tracks_every_field() {
        let a = Config::reference();
        let mut b = a;
        assert_eq!(params_hash(&a), params_hash(&b));
        assert_eq!(params_hash(&a).len(), 64);
        b.set("temperature_k", 0.31).unwrap();
        assert_ne!(params_hash(&a), params_hash(&b));
    }
}
