use std::path::{Path, PathBuf};

use gnpforge_core::{Budget, Error, Result};
use serde::{Deserialize, Serialize};

use crate::args::{Cli, Format};

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub budget: Budget,
    /// Seed for sampled sweeps when the command gives none.
    pub seed: u64,
    pub format: Format,
    pub cache_dir: Option<PathBuf>,
    pub threads: Option<usize>,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<RunConfig> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidInput(format!("cannot read config {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| Error::InvalidInput(format!("bad config {}: {e}", path.display())))
    }

    /// The file named by `--config` or `GNPFORGE_CONFIG`, overridden by flags.
    pub fn resolve(cli: &Cli) -> Result<RunConfig> {
        let mut cfg = match &cli.config {
            Some(path) => RunConfig::load(path)?,
            None => RunConfig::default(),
        };
        if let Some(t) = cli.threads {
            cfg.threads = Some(t);
        }
        if let Some(f) = cli.format {
            cfg.format = f;
        }
        if let Some(d) = &cli.cache_dir {
            cfg.cache_dir = Some(d.clone());
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        self.budget.validate()?;
        if self.threads == Some(0) {
            return Err(Error::InvalidInput("threads must be positive".into()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::Parser;

    #[test]
    fn flags_override_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.json");
        std::fs::write(&path, r#"{"format": "csv", "threads": 3, "seed": 9, "budget": {"tuples": 77}}"#).unwrap();
        let cli = Cli::parse_from([
            "gnpforge",
            "--config",
            path.to_str().unwrap(),
            "--threads",
            "1",
            "density",
            "--p",
            "2",
            "--exponents",
            "1",
        ]);
        let cfg = RunConfig::resolve(&cli).unwrap();
        assert_eq!(cfg.threads, Some(1));
        assert_eq!(cfg.format, Format::Csv);
        assert_eq!(cfg.seed, 9);
        assert_eq!(cfg.budget.tuples, 77);
        assert_eq!(cfg.budget.field_points, Budget::default().field_points);
    }

    #[test]
    fn rejects_zero_threads() {
        let cfg = RunConfig { threads: Some(0), ..RunConfig::default() };
        assert!(cfg.validate().is_err());
    }
}
