//! Persistent profile cache: one JSON object per line, keyed by the
//! canonical knot expression.
//!
//! Loading never fails on bad content. Lines that do not parse, fail the
//! profile invariants or carry another engine version are skipped with a
//! warning. Stores rewrite the whole file through a temporary file and an
//! atomic rename, so concurrent readers always see a complete file.

use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use crate::cfk::VHProfile;

/// Bumped whenever a change could alter computed profiles.
pub const ENGINE_VERSION: u32 = 1;

/// Where a value came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Computed,
    User,
}

impl std::fmt::Display for Provenance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Provenance::Computed => "computed",
            Provenance::User => "user",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfileCacheEntry {
    pub key: String,
    pub genus: u32,
    #[serde(rename = "V")]
    pub v: Vec<u64>,
    #[serde(rename = "H")]
    pub h: Vec<u64>,
    pub version: u32,
    pub provenance: Provenance,
}

impl ProfileCacheEntry {
    pub fn new(key: impl Into<String>, profile: &VHProfile, provenance: Provenance) -> ProfileCacheEntry {
        ProfileCacheEntry {
            key: key.into(),
            genus: profile.genus(),
            v: profile.v_values().to_vec(),
            h: profile.h_values().to_vec(),
            version: ENGINE_VERSION,
            provenance,
        }
    }

    pub fn profile(&self) -> crate::Result<VHProfile> {
        VHProfile::new(self.genus, self.v.clone(), self.h.clone())
    }
}

/// In-memory view of a cache file.
#[derive(Debug)]
pub struct ProfileCache {
    path: PathBuf,
    entries: Mutex<BTreeMap<String, ProfileCacheEntry>>,
}

impl ProfileCache {
    /// Reads `path`; a missing file gives an empty cache.
    pub fn open(path: impl Into<PathBuf>) -> ProfileCache {
        let path = path.into();
        let entries = match fs::read_to_string(&path) {
            Ok(text) => parse_entries(&text, &path),
            Err(e) if e.kind() == io::ErrorKind::NotFound => BTreeMap::new(),
            Err(e) => {
                log::warn!("cannot read profile cache {}: {e}; continuing without it", path.display());
                BTreeMap::new()
            }
        };
        ProfileCache { path, entries: Mutex::new(entries) }
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn len(&self) -> usize {
        self.entries.lock().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, key: &str) -> Option<(VHProfile, Provenance)> {
        let entries = self.entries.lock().expect("cache lock");
        let e = entries.get(key)?;
        e.profile().ok().map(|p| (p, e.provenance))
    }

    /// Inserts or replaces the entry and rewrites the file.
    pub fn store(&self, entry: ProfileCacheEntry) -> io::Result<()> {
        let mut entries = self.entries.lock().expect("cache lock");
        entries.insert(entry.key.clone(), entry);
        write_entries(&self.path, &entries)
    }

    /// Like [`ProfileCache::store`] but an I/O failure only logs a warning.
    pub fn store_or_warn(&self, entry: ProfileCacheEntry) {
        if let Err(e) = self.store(entry) {
            log::warn!("cannot write profile cache {}: {e}; continuing uncached", self.path.display());
        }
    }
}

fn parse_entries(text: &str, path: &Path) -> BTreeMap<String, ProfileCacheEntry> {
    let mut out = BTreeMap::new();
    for (n, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let entry: ProfileCacheEntry = match serde_json::from_str(line) {
            Ok(e) => e,
            Err(e) => {
                log::warn!("{}:{}: skipping corrupted cache line: {e}", path.display(), n + 1);
                continue;
            }
        };
        if entry.version != ENGINE_VERSION {
            log::warn!("{}:{}: skipping entry from engine version {}", path.display(), n + 1, entry.version);
            continue;
        }
        if let Err(e) = entry.profile() {
            log::warn!("{}:{}: skipping entry for {}: {e}", path.display(), n + 1, entry.key);
            continue;
        }
        out.insert(entry.key.clone(), entry);
    }
    out
}

fn write_entries(path: &Path, entries: &BTreeMap<String, ProfileCacheEntry>) -> io::Result<()> {
    let dir = path.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    for e in entries.values() {
        serde_json::to_writer(&mut tmp, e)?;
        tmp.write_all(b"\n")?;
    }
    tmp.flush()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}
