//! Append-only JSONL store of oracle results.

use std::fs::OpenOptions;
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use crate::error::Result;
use crate::families::GraphFamily;

use super::{ex_exact, ExRecord, SearchConstraint};

pub const DEFAULT_CACHE_PATH: &str = "turan-cache.jsonl";

static WRITE_LOCK: Mutex<()> = Mutex::new(());

#[derive(Clone, Debug)]
pub struct ExCache {
    path: PathBuf,
}

impl ExCache {
    pub fn new(path: impl Into<PathBuf>) -> Self {
        ExCache { path: path.into() }
    }

    /// `$TURAN_CACHE`, else [`DEFAULT_CACHE_PATH`] in the working directory.
    pub fn from_env() -> Self {
        Self::new(std::env::var_os("TURAN_CACHE").map_or_else(|| PathBuf::from(DEFAULT_CACHE_PATH), PathBuf::from))
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    /// Most recent record stored under `key`. Unreadable lines are skipped.
    pub fn lookup(&self, key: &str) -> Result<Option<ExRecord>> {
        let file = match std::fs::File::open(&self.path) {
            Ok(f) => f,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e.into()),
        };
        let mut found = None;
        for (i, line) in BufReader::new(file).lines().enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            match serde_json::from_str::<ExRecord>(&line) {
                Ok(rec) if rec.key == key => {
                    if rec.is_consistent() {
                        found = Some(rec);
                    } else {
                        log::warn!("{}:{}: inconsistent record skipped", self.path.display(), i + 1);
                    }
                }
                Ok(_) => {}
                Err(e) => log::warn!("{}:{}: corrupt cache line skipped: {e}", self.path.display(), i + 1),
            }
        }
        Ok(found)
    }

    pub fn store(&self, rec: &ExRecord) -> Result<()> {
        let line = serde_json::to_string(rec).map_err(|e| crate::error::TuranError::Io(e.to_string()))?;
        let _guard = WRITE_LOCK.lock().unwrap_or_else(|p| p.into_inner());
        let mut f = OpenOptions::new().create(true).append(true).open(&self.path)?;
        writeln!(f, "{line}")?;
        Ok(())
    }

    /// Cached result if present, else computed and stored. A stored
    /// witness record also answers the value-only query.
    pub fn ex(&self, n: usize, fam: &GraphFamily, constraint: &SearchConstraint) -> Result<ExRecord> {
        let key = super::query_key(n, fam, constraint);
        if let Some(rec) = self.lookup(&key)? {
            return Ok(rec);
        }
        if !constraint.want_witnesses {
            let richer = SearchConstraint {
                want_witnesses: true,
                ..constraint.clone()
            };
            if let Some(rec) = self.lookup(&super::query_key(n, fam, &richer))? {
                return Ok(rec.without_witnesses());
            }
        }
        let rec = ex_exact(n, fam, constraint)?;
        self.store(&rec)?;
        Ok(rec)
    }
}
