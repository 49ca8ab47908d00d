//! Reports keyed by a SHA-256 of the command and the settings that affect
//! its result, so repeated sweeps are read back instead of recomputed.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::args::Command;
use crate::config::RunConfig;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Entry {
    pub payload: Value,
    pub findings: Vec<String>,
    pub warnings: Vec<String>,
}

pub fn key(command: &Command, config: &RunConfig) -> String {
    let material = serde_json::json!({
        "command": command,
        "budget": config.budget,
        "seed": config.seed,
    });
    hex::encode(Sha256::digest(material.to_string().as_bytes()))
}

fn path(dir: &Path, key: &str) -> PathBuf {
    dir.join(format!("{key}.json"))
}

pub fn load(dir: &Path, key: &str) -> Option<Entry> {
    let text = fs::read_to_string(path(dir, key)).ok()?;
    serde_json::from_str(&text).ok()
}

pub fn store(dir: &Path, key: &str, entry: &Entry) -> std::io::Result<()> {
    fs::create_dir_all(dir)?;
    let tmp = dir.join(format!("{key}.tmp"));
    fs::write(&tmp, serde_json::to_vec(entry)?)?;
    fs::rename(tmp, path(dir, key))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn density(p: u32) -> Command {
        Command::Density { p, exponents: vec![1, 2], nmax: None }
    }

    #[test]
    fn key_tracks_command_budget_and_seed() {
        let cfg = RunConfig::default();
        assert_eq!(key(&density(5), &cfg), key(&density(5), &cfg));
        assert_ne!(key(&density(5), &cfg), key(&density(7), &cfg));
        let seeded = RunConfig { seed: 1, ..RunConfig::default() };
        assert_ne!(key(&density(5), &cfg), key(&density(5), &seeded));
        let csv = RunConfig { format: crate::args::Format::Csv, threads: Some(2), ..RunConfig::default() };
        assert_eq!(key(&density(5), &cfg), key(&density(5), &csv));
        assert_eq!(key(&density(5), &cfg).len(), 64);
    }

    #[test]
    fn store_then_load() {
        let dir = tempfile::tempdir().unwrap();
        let e = Entry { payload: serde_json::json!({"x": 1}), findings: vec!["f".into()], warnings: vec![] };
        store(dir.path(), "abc", &e).unwrap();
        let back = load(dir.path(), "abc").unwrap();
        assert_eq!(back.payload, e.payload);
        assert_eq!(back.findings, e.findings);
        assert!(load(dir.path(), "missing").is_none());
    }
}
