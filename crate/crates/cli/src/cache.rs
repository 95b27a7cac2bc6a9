//! On-disk cache of lambda tables, one JSON file per rank.
//!
//! The cache is advisory. An entry that fails to parse, carries another
//! format version, or fails the spot checks on load is reported, recomputed
//! and overwritten. Writes go to a temporary file in the cache directory
//! followed by a rename.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use homcount::lattice::divisor_weighted_sum;
use homcount::{lambda_table, LambdaTable, Nat, Seq1};
use num_traits::One;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const CACHE_FORMAT_VERSION: u32 = 1;
pub const CACHE_DIR_ENV: &str = "HOMCOUNT_CACHE_DIR";

/// How many leading entries are re-derived on load.
const SPOT_CHECK_LEN: usize = 64;

#[derive(Error, Debug)]
pub enum CacheError {
    #[error("cache i/o on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("cache file {0} is not valid JSON for a lambda table")]
    Parse(PathBuf),
    #[error("cache file {path} has format version {found}, expected {CACHE_FORMAT_VERSION}")]
    Version { path: PathBuf, found: u32 },
    #[error("cache file {path} failed its consistency check: {reason}")]
    Inconsistent { path: PathBuf, reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub version: u32,
    pub rank: u32,
    pub max: usize,
    pub values: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CacheStatus {
    Hit,
    Miss,
    /// A bad entry was found and replaced.
    Repaired,
}

/// Cache directory: explicit flag, then `$HOMCOUNT_CACHE_DIR`, then the
/// per-user cache directory.
pub fn resolve_cache_dir(explicit: Option<PathBuf>) -> Option<PathBuf> {
    if explicit.is_some() {
        return explicit;
    }
    if let Some(dir) = std::env::var_os(CACHE_DIR_ENV).filter(|d| !d.is_empty()) {
        return Some(PathBuf::from(dir));
    }
    if let Some(xdg) = std::env::var_os("XDG_CACHE_HOME").filter(|d| !d.is_empty()) {
        return Some(PathBuf::from(xdg).join("homcount"));
    }
    std::env::var_os("HOME").map(|home| PathBuf::from(home).join(".cache").join("homcount"))
}

#[derive(Clone, Debug)]
pub struct LambdaCache {
    dir: PathBuf,
}

impl LambdaCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        LambdaCache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn entry_path(&self, rank: u32) -> PathBuf {
        self.dir.join(format!("lambda-r{rank}.json"))
    }

    /// The stored table truncated to `len`, `Ok(None)` if absent or too short.
    pub fn load(&self, rank: u32, len: usize) -> Result<Option<LambdaTable>, CacheError> {
        let path = self.entry_path(rank);
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(source) => return Err(CacheError::Io { path, source }),
        };
        let entry: CacheEntry = serde_json::from_str(&text).map_err(|_| CacheError::Parse(path.clone()))?;
        if entry.version != CACHE_FORMAT_VERSION {
            return Err(CacheError::Version {
                path,
                found: entry.version,
            });
        }
        let table = validate(&path, rank, &entry)?;
        if table.len() < len {
            return Ok(None);
        }
        Ok(Some(LambdaTable::from_values(rank, table.values().prefix(len))))
    }

    pub fn store(&self, table: &LambdaTable) -> Result<(), CacheError> {
        let io = |source| CacheError::Io {
            path: self.dir.clone(),
            source,
        };
        fs::create_dir_all(&self.dir).map_err(io)?;
        let entry = CacheEntry {
            version: CACHE_FORMAT_VERSION,
            rank: table.rank(),
            max: table.len(),
            values: table.values().values().iter().map(Nat::to_string).collect(),
        };
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir).map_err(io)?;
        serde_json::to_writer(&mut tmp, &entry).expect("plain data serializes");
        tmp.write_all(b"\n").map_err(io)?;
        tmp.persist(self.entry_path(table.rank()))
            .map_err(|e| io(e.error))?;
        Ok(())
    }

    /// `lambda_rank(1..=len)`, from disk when possible. Cache trouble is
    /// reported through `warn` and never changes the returned values.
    pub fn get_or_compute(&self, rank: u32, len: usize, mut warn: impl FnMut(&str)) -> (LambdaTable, CacheStatus) {
        let status = match self.load(rank, len) {
            Ok(Some(table)) => return (table, CacheStatus::Hit),
            Ok(None) => CacheStatus::Miss,
            Err(e) => {
                warn(&format!("{e}; recomputing"));
                CacheStatus::Repaired
            }
        };
        let table = lambda_table(rank, len);
        // keep a longer healthy entry rather than shrinking it
        let keep_existing = status == CacheStatus::Miss && self.stored_len(rank).is_some_and(|l| l >= len);
        if !keep_existing {
            if let Err(e) = self.store(&table) {
                warn(&format!("could not write cache: {e}"));
            }
        }
        (table, status)
    }

    fn stored_len(&self, rank: u32) -> Option<usize> {
        let text = fs::read_to_string(self.entry_path(rank)).ok()?;
        serde_json::from_str::<CacheEntry>(&text).ok().map(|e| e.values.len())
    }
}

fn validate(path: &Path, rank: u32, entry: &CacheEntry) -> Result<LambdaTable, CacheError> {
    let bad = |reason: String| CacheError::Inconsistent {
        path: path.to_path_buf(),
        reason,
    };
    if entry.rank != rank {
        return Err(bad(format!("stored rank {} under rank {rank}", entry.rank)));
    }
    if entry.values.is_empty() || entry.values.len() != entry.max {
        return Err(bad("length does not match header".into()));
    }
    let values: Vec<Nat> = entry
        .values
        .iter()
        .map(|v| v.parse::<Nat>())
        .collect::<Result<_, _>>()
        .map_err(|_| bad("non-numeric value".into()))?;
    if !values[0].is_one() {
        return Err(bad("lambda(1) != 1".into()));
    }
    let table = LambdaTable::from_values(rank, Seq1::new(values).expect("nonempty"));
    let m = table.len().min(SPOT_CHECK_LEN);
    if rank == 0 {
        if *table.values() != Seq1::delta(table.len()) {
            return Err(bad("rank-0 table is not the delta sequence".into()));
        }
    } else {
        let prev = lambda_table(rank - 1, m);
        if let Some(n) = (1..=m).find(|&n| divisor_weighted_sum(&prev, n) != *table.get(n)) {
            return Err(bad(format!("divisor identity fails at n = {n}")));
        }
    }
    Ok(table)
}
