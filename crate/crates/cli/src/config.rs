//! Scan configuration with the precedence: command-line flags, then a TOML
//! config file, then the `CTUPLES_WORKERS` environment variable, then
//! defaults.

use std::path::PathBuf;

use anyhow::Result;
use ctuples_core::logconcavity::render::TableFormat;
use serde::Deserialize;

use crate::tables::TableSelector;

/// One fully resolved scan: ranges, output format, parallelism, checkpoint
/// and the optional table selector.
#[derive(Debug, Clone)]
pub struct ScanConfig {
    pub n_lo: usize,
    pub n_hi: usize,
    pub ell_lo: u32,
    pub ell_hi: u32,
    pub format: TableFormat,
    pub workers: usize,
    pub checkpoint: Option<PathBuf>,
    pub table: Option<TableSelector>,
}

impl ScanConfig {
    pub fn validate(&self) -> Result<()> {
        let reject = |msg: String| -> Result<()> {
            Err(ctuples_core::Error::InvalidArgument(msg).into())
        };
        if self.n_lo < 1 || self.n_lo > self.n_hi {
            return reject(format!("empty index range {}..={}", self.n_lo, self.n_hi));
        }
        if self.ell_lo > self.ell_hi {
            return reject(format!("empty rank range {}..={}", self.ell_lo, self.ell_hi));
        }
        if self.workers < 1 {
            return reject("worker count must be at least 1".into());
        }
        Ok(())
    }
}

/// Optional values read from a `--config` TOML file.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub workers: Option<usize>,
    pub checkpoint: Option<PathBuf>,
    pub format: Option<String>,
    pub n_lo: Option<usize>,
    pub n_hi: Option<usize>,
    pub ell_lo: Option<u32>,
    pub ell_hi: Option<u32>,
    pub ncheck: Option<usize>,
    pub full: Option<bool>,
}

impl FileConfig {
    pub fn load(path: &std::path::Path) -> Result<FileConfig> {
        let reject = |detail: String| {
            ctuples_core::Error::InvalidArgument(format!(
                "config file {}: {detail}",
                path.display()
            ))
        };
        let text =
            std::fs::read_to_string(path).map_err(|e| reject(e.to_string()))?;
        Ok(toml::from_str(&text).map_err(|e| reject(e.to_string()))?)
    }
}

/// Worker count from the environment, when set and sensible.
pub fn workers_from_env() -> Option<usize> {
    std::env::var("CTUPLES_WORKERS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&w| w >= 1)
}

/// Resolve the worker count: flag, then config file, then environment, then
/// every available core.
pub fn resolve_workers(flag: Option<usize>, file: &FileConfig) -> usize {
    flag.or(file.workers)
        .or_else(workers_from_env)
        .unwrap_or_else(num_cpus)
}

fn num_cpus() -> usize {
    std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_config_parses() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("scan.toml");
        std::fs::write(&path, "workers = 3\nn_hi = 50\nformat = \"csv\"\n").unwrap();
        let cfg = FileConfig::load(&path).unwrap();
        assert_eq!(cfg.workers, Some(3));
        assert_eq!(cfg.n_hi, Some(50));
        assert_eq!(cfg.format.as_deref(), Some("csv"));
        assert_eq!(cfg.n_lo, None);
    }

    #[test]
    fn unknown_keys_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("scan.toml");
        std::fs::write(&path, "wrokers = 3\n").unwrap();
        assert!(FileConfig::load(&path).is_err());
    }

    #[test]
    fn flag_beats_file() {
        let file = FileConfig {
            workers: Some(5),
            ..FileConfig::default()
        };
        assert_eq!(resolve_workers(Some(2), &file), 2);
        assert_eq!(resolve_workers(None, &file), 5);
    }

    #[test]
    fn validation_rejects_empty_ranges() {
        let cfg = ScanConfig {
            n_lo: 5,
            n_hi: 4,
            ell_lo: 0,
            ell_hi: 0,
            format: TableFormat::Csv,
            workers: 1,
            checkpoint: None,
            table: None,
        };
        assert!(cfg.validate().is_err());
    }
}
