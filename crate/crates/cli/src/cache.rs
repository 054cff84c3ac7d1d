//! On-disk cache for subgroup enumerations, keyed by group descriptor hash.
//!
//! Each entry stores the payload text next to its SHA-256. A missing or
//! corrupt entry is recomputed and rewritten.

use std::fs;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

#[derive(Serialize, Deserialize)]
struct Entry {
    checksum: String,
    payload: String,
}

pub struct Cache {
    dir: Option<PathBuf>,
}

fn checksum(payload: &str) -> String {
    Sha256::digest(payload.as_bytes())
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

impl Cache {
    pub fn new(dir: Option<PathBuf>) -> Cache {
        Cache { dir }
    }

    fn path(dir: &Path, key: &str) -> PathBuf {
        dir.join(format!("{key}.json"))
    }

    /// Loads `key`, or computes, stores and returns it.
    pub fn get_or_compute<T, E>(&self, key: &str, compute: impl FnOnce() -> Result<T, E>) -> Result<T, E>
    where
        T: Serialize + DeserializeOwned,
    {
        let Some(dir) = &self.dir else {
            return compute();
        };
        let path = Cache::path(dir, key);
        if path.exists() {
            match self.load(&path) {
                Some(value) => return Ok(value),
                None => eprintln!("warning: cache entry {} is corrupt; recomputing", path.display()),
            }
        }
        let value = compute()?;
        if let Err(e) = self.store(dir, &path, &value) {
            eprintln!("warning: could not write cache entry {}: {e}", path.display());
        }
        Ok(value)
    }

    fn load<T: DeserializeOwned>(&self, path: &Path) -> Option<T> {
        let text = fs::read_to_string(path).ok()?;
        let entry: Entry = serde_json::from_str(&text).ok()?;
        if checksum(&entry.payload) != entry.checksum {
            return None;
        }
        serde_json::from_str(&entry.payload).ok()
    }

    fn store<T: Serialize>(&self, dir: &Path, path: &Path, value: &T) -> std::io::Result<()> {
        fs::create_dir_all(dir)?;
        let payload = serde_json::to_string(value)?;
        let entry = Entry {
            checksum: checksum(&payload),
            payload,
        };
        fs::write(path, serde_json::to_string(&entry)?)
    }
}
