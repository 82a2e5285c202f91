//! Resumable checkpoints for long column scans.
//!
//! A checkpoint is a JSON file holding every completed column with its sign
//! string and exception set. Writes go through a temporary file and an
//! atomic rename so an interrupted scan never leaves a torn file behind.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::{Sign, SignColumn};
use crate::{Error, Result};

const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Serialize, Deserialize)]
struct StoredColumn {
    ell: u32,
    n_lo: usize,
    n_hi: usize,
    signs: String,
    exceptions: Vec<usize>,
}

#[derive(Debug, Serialize, Deserialize)]
struct StoredFile {
    version: u32,
    columns: Vec<StoredColumn>,
}

/// In-memory view of a checkpoint file, keyed by `(ell, n_lo, n_hi)`.
#[derive(Debug)]
pub struct CheckpointFile {
    path: PathBuf,
    columns: BTreeMap<(u32, usize, usize), String>,
}

impl CheckpointFile {
    /// Load an existing checkpoint or start an empty one. A file that exists
    /// but cannot be parsed is reported as corrupt, never silently ignored.
    pub fn load_or_new(path: &Path) -> Result<CheckpointFile> {
        let mut store = CheckpointFile {
            path: path.to_path_buf(),
            columns: BTreeMap::new(),
        };
        if !path.exists() {
            return Ok(store);
        }
        let text = std::fs::read_to_string(path)?;
        let parsed: StoredFile = serde_json::from_str(&text).map_err(|e| Error::Checkpoint {
            path: path.to_path_buf(),
            detail: format!("invalid JSON: {e}"),
        })?;
        if parsed.version != FORMAT_VERSION {
            return Err(Error::Checkpoint {
                path: path.to_path_buf(),
                detail: format!("unsupported version {}", parsed.version),
            });
        }
        for col in parsed.columns {
            if col.n_lo < 1 || col.n_lo > col.n_hi {
                return Err(Error::Checkpoint {
                    path: path.to_path_buf(),
                    detail: format!("column ell={} has invalid range", col.ell),
                });
            }
            let expected_len = col.n_hi - col.n_lo + 1;
            if col.signs.chars().count() != expected_len
                || col.signs.chars().any(|c| Sign::from_char(c).is_none())
            {
                return Err(Error::Checkpoint {
                    path: path.to_path_buf(),
                    detail: format!("column ell={} has a malformed sign string", col.ell),
                });
            }
            store
                .columns
                .insert((col.ell, col.n_lo, col.n_hi), col.signs);
        }
        Ok(store)
    }

    /// Fetch a completed column if it was stored with exactly this range.
    pub fn lookup(&self, ell: u32, n_lo: usize, n_hi: usize) -> Option<SignColumn> {
        self.columns.get(&(ell, n_lo, n_hi)).map(|signs| SignColumn {
            ell,
            n_lo,
            n_hi,
            signs: signs
                .chars()
                .map(|c| Sign::from_char(c).expect("validated on load"))
                .collect(),
        })
    }

    pub fn insert(&mut self, column: &SignColumn) {
        let signs: String = column.signs.iter().map(|s| s.to_char()).collect();
        self.columns
            .insert((column.ell, column.n_lo, column.n_hi), signs);
    }

    /// Persist the current state atomically.
    pub fn save(&self) -> Result<()> {
        let stored = StoredFile {
            version: FORMAT_VERSION,
            columns: self
                .columns
                .iter()
                .map(|(&(ell, n_lo, n_hi), signs)| StoredColumn {
                    ell,
                    n_lo,
                    n_hi,
                    signs: signs.clone(),
                    exceptions: signs
                        .chars()
                        .enumerate()
                        .filter(|&(_, c)| c == '-')
                        .map(|(i, _)| n_lo + i)
                        .collect(),
                })
                .collect(),
        };
        let text = serde_json::to_string(&stored).expect("checkpoint serialization");
        let tmp = self.path.with_extension("tmp");
        std::fs::write(&tmp, text)?;
        std::fs::rename(&tmp, &self.path)?;
        Ok(())
    }
}
